"""Pure-Python convolution kernels, used when the compiled module is absent."""

KARATSUBA_CUTOFF = 48


def _school(a, b):
    la, lb = len(a), len(b)
    if not la or not lb:
        return []
    out = [0] * (la + lb - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _kara(a, b):
    la, lb = len(a), len(b)
    if la < KARATSUBA_CUTOFF or lb < KARATSUBA_CUTOFF:
        return _school(a, b)
    m = max(la, lb) // 2
    a0, a1 = a[:m], a[m:]
    b0, b1 = b[:m], b[m:]
    z0 = _kara(a0, b0)
    z2 = _kara(a1, b1)
    sa = [x + y for x, y in zip(a0, a1)] + a0[len(a1):] + a1[len(a0):]
    sb = [x + y for x, y in zip(b0, b1)] + b0[len(b1):] + b1[len(b0):]
    z1 = _kara(sa, sb)
    out = [0] * (la + lb - 1)
    for i, v in enumerate(z0):
        out[i] += v
        z1[i] -= v
    for i, v in enumerate(z2):
        out[i + 2 * m] += v
        z1[i] -= v
    for i, v in enumerate(z1):
        if i + m < len(out):
            out[i + m] += v
    return out


def conv_int(a, b, n):
    """First n coefficients of the product of two integer lists."""
    a = list(a[:n])
    b = list(b[:n])
    if len(a) >= KARATSUBA_CUTOFF and len(b) >= KARATSUBA_CUTOFF:
        full = _kara(a, b)
    else:
        full = _school(a, b)
    full = full[:n]
    return full + [0] * (n - len(full))


def conv_int_school(a, b, n):
    full = _school(list(a[:n]), list(b[:n]))[:n]
    return full + [0] * (n - len(full))


def conv_modp(a, b, n, p):
    """Truncated product mod p; entries reduced into [0, p)."""
    la, lb = min(len(a), n), min(len(b), n)
    out = [0] * n
    for k in range(n):
        s = 0
        for i in range(max(0, k - lb + 1), min(k, la - 1) + 1):
            s += a[i] * b[k - i]
        out[k] = s % p
    return out
