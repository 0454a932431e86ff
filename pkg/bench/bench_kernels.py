"""Compiled vs pure-Python convolution kernels.

    python3 bench/bench_kernels.py [--sizes 64 256 1024] [--repeat 5]
"""

import argparse
import random
import timeit

from replica import _kernels_py as py
from replica.kernels import BACKEND

try:
    from replica import _kernels as cy
except ImportError:
    cy = None

P = 1000003


def operands(n, bits, rng):
    a = [rng.getrandbits(bits) - (1 << (bits - 1)) for _ in range(n)]
    b = [rng.getrandbits(bits) - (1 << (bits - 1)) for _ in range(n)]
    return a, b


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[32, 128, 512, 1024])
    ap.add_argument("--bits", type=int, default=256, help="coefficient size for conv_int")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"active backend: {BACKEND}")
    if cy is None:
        print("compiled module not built; only the Python timings are shown")
    print(f"{'kernel':<14}{'n':>6}{'python s':>12}{'cython s':>12}{'speedup':>9}")
    for n in args.sizes:
        a, b = operands(n, args.bits, rng)
        am = [x % P for x in a]
        bm = [x % P for x in b]
        cases = [
            ("conv_int", lambda m: m.conv_int(a, b, n)),
            ("school", lambda m: m.conv_int_school(a, b, n)),
            ("conv_modp", lambda m: m.conv_modp(am, bm, n, P)),
        ]
        for name, call in cases:
            tp = best(lambda: call(py), args.repeat)
            if cy is not None:
                assert call(cy) == call(py), f"{name} disagrees at n = {n}"
                tc = best(lambda: call(cy), args.repeat)
                print(f"{name:<14}{n:>6}{tp:>12.5f}{tc:>12.5f}{tp / tc:>9.1f}")
            else:
                print(f"{name:<14}{n:>6}{tp:>12.5f}{'-':>12}{'-':>9}")


if __name__ == "__main__":
    main()
