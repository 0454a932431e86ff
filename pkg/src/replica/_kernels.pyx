# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled convolution kernels.

conv_int works on Python integers (arbitrary size), so it only saves the
interpreter loop overhead; conv_modp runs entirely on machine words.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

KARATSUBA_CUTOFF = 48


cdef list _school(list a, list b):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j
    if la == 0 or lb == 0:
        return []
    cdef list out = [0] * (la + lb - 1)
    cdef object x
    for i in range(la):
        x = a[i]
        if x:
            for j in range(lb):
                out[i + j] += x * b[j]
    return out


cdef list _kara(list a, list b):
    cdef Py_ssize_t la = len(a), lb = len(b), m, i
    if la < KARATSUBA_CUTOFF or lb < KARATSUBA_CUTOFF:
        return _school(a, b)
    m = max(la, lb) // 2
    cdef list a0 = a[:m], a1 = a[m:], b0 = b[:m], b1 = b[m:]
    cdef list z0 = _kara(a0, b0)
    cdef list z2 = _kara(a1, b1)
    cdef list sa = [x + y for x, y in zip(a0, a1)] + a0[len(a1):] + a1[len(a0):]
    cdef list sb = [x + y for x, y in zip(b0, b1)] + b0[len(b1):] + b1[len(b0):]
    cdef list z1 = _kara(sa, sb)
    cdef list out = [0] * (la + lb - 1)
    for i in range(len(z0)):
        out[i] += z0[i]
        z1[i] -= z0[i]
    for i in range(len(z2)):
        out[i + 2 * m] += z2[i]
        z1[i] -= z2[i]
    for i in range(len(z1)):
        if i + m < la + lb - 1:
            out[i + m] += z1[i]
    return out


def conv_int(a, b, Py_ssize_t n):
    cdef list aa = list(a[:n]), bb = list(b[:n])
    cdef list full
    if len(aa) >= KARATSUBA_CUTOFF and len(bb) >= KARATSUBA_CUTOFF:
        full = _kara(aa, bb)
    else:
        full = _school(aa, bb)
    full = full[:n]
    return full + [0] * (n - len(full))


def conv_int_school(a, b, Py_ssize_t n):
    cdef list full = _school(list(a[:n]), list(b[:n]))[:n]
    return full + [0] * (n - len(full))


def conv_modp(a, b, Py_ssize_t n, uint64_t p):
    """Truncated product mod p for p < 2**32; every partial product fits in 64 bits."""
    if p >= (<uint64_t>1 << 32):
        raise OverflowError("modulus must be below 2**32")
    cdef Py_ssize_t la = min(len(a), n), lb = min(len(b), n), i, k, lo, hi
    cdef uint64_t *x = <uint64_t *> malloc((la + 1) * sizeof(uint64_t))
    cdef uint64_t *y = <uint64_t *> malloc((lb + 1) * sizeof(uint64_t))
    cdef uint64_t s
    cdef list out = [0] * n
    try:
        for i in range(la):
            x[i] = <uint64_t>(a[i] % p)
        for i in range(lb):
            y[i] = <uint64_t>(b[i] % p)
        for k in range(n):
            s = 0
            lo = k - lb + 1 if k - lb + 1 > 0 else 0
            hi = k if k < la - 1 else la - 1
            for i in range(lo, hi + 1):
                s = (s + x[i] * y[k - i]) % p
            out[k] = s
    finally:
        free(x)
        free(y)
    return out
