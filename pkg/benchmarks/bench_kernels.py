"""Time the compiled GMP rank kernel against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--sizes 10,20,40,60]
"""

import argparse
import random
import sys
import timeit

from strengthlab import _kernels_py

try:
    from strengthlab import _kernels
except ImportError:
    _kernels = None


def integer_matrix(rng, rows, cols, height=50):
    return [[rng.randint(-height, height) for _ in range(cols)] for _ in range(rows)]


def deficient_matrix(rng, size, rank):
    # product of size x rank and rank x size: rank exactly `rank` generically
    a = integer_matrix(rng, size, rank, 9)
    b = integer_matrix(rng, rank, size, 9)
    return [[sum(a[i][t] * b[t][j] for t in range(rank)) for j in range(size)] for i in range(size)]


def bench(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--sizes", default="10,20,40,60")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation` first")
        return 1

    rng = random.Random(args.seed)
    print(f"{'case':<26}{'python (s)':>12}{'gmp (s)':>12}{'speedup':>10}")
    for n in (int(s) for s in args.sizes.split(",")):
        cases = [
            (f"int full {n}x{n}", "bareiss_rank_int", (integer_matrix(rng, n, n),)),
            (f"int rank {n // 2} {n}x{n}", "bareiss_rank_int", (deficient_matrix(rng, n, n // 2),)),
            (f"gauss {n}x{n}", "bareiss_rank_gauss", (integer_matrix(rng, n, n), integer_matrix(rng, n, n))),
        ]
        for label, name, inputs in cases:
            slow, fast = getattr(_kernels_py, name), getattr(_kernels, name)
            if slow(*inputs) != fast(*inputs):
                print(f"{label}: backends disagree", file=sys.stderr)
                return 2
            t_py = bench(slow, inputs, args.repeat)
            t_gmp = bench(fast, inputs, args.repeat)
            print(f"{label:<26}{t_py:>12.4f}{t_gmp:>12.4f}{t_py / t_gmp:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
