"""Compare the compiled kernels against the pure-Python fallback.

Microbenchmarks the five hot kernels on fan-sized workloads, then times a
full n = 3 fan enumeration under each implementation (in subprocesses, since
the dispatch in :mod:`valperm.kernels` happens at import).  Run with

    python3 benchmarks/bench_kernels.py [--full]

``--full`` adds the n = 4 enumeration to the end-to-end comparison (roughly
ten seconds compiled, a few minutes pure).
"""

import argparse
import os
import random
import subprocess
import sys
import time

from valperm import _kernels_py

try:
    from valperm import _speedups
except ImportError:
    _speedups = None

rng = random.Random(99)


def random_matrix(rows, cols, lo=-50, hi=50):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


VEC_A = [rng.randint(-10**6, 10**6) for _ in range(24)]
VEC_B = [rng.randint(-10**6, 10**6) for _ in range(24)]
MAT = random_matrix(30, 24)
WIDE = random_matrix(12, 24)

CASES = [
    ("dot (24)", lambda k: k.dot(VEC_A, VEC_B), 20000),
    ("vec_gcd_reduce (24)", lambda k: k.vec_gcd_reduce([6 * x for x in VEC_A]), 20000),
    ("rref (30x24)", lambda k: k.rref([row[:] for row in MAT], 24), 200),
    ("rank (30x24)", lambda k: k.rank([row[:] for row in MAT], 24), 200),
    ("nullspace (12x24)", lambda k: k.nullspace([row[:] for row in WIDE], 24), 200),
    ("combine_ray (24)", lambda k: k.combine_ray(VEC_A, VEC_B, 7, -5), 20000),
]


def timeit(fn, reps):
    start = time.perf_counter()
    for _ in range(reps):
        fn()
    return time.perf_counter() - start


def bench_micro():
    print(f"{'kernel':24} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for name, call, reps in CASES:
        pure = timeit(lambda: call(_kernels_py), reps)
        if _speedups is None:
            print(f"{name:24} {pure:10.4f} {'-':>13} {'-':>8}")
            continue
        fast = timeit(lambda: call(_speedups), reps)
        assert call(_kernels_py) == call(_speedups), f"{name}: implementations disagree"
        print(f"{name:24} {pure:10.4f} {fast:13.4f} {pure / fast:7.1f}x")


def bench_end_to_end(full):
    sizes = (3, 4) if full else (3,)
    sys.stdout.flush()
    snippet = (
        "import sys, time; from valperm import kernels; "
        "from valperm.fans import enumerate_fan; "
        "n = int(sys.argv[1]); t = time.perf_counter(); "
        "fan = enumerate_fan(n); "
        "print(f'{kernels.IMPL}: n={n} -> {len(fan.maximal)} cones in "
        "{time.perf_counter() - t:.2f}s')"
    )
    for n in sizes:
        for pure in ("0", "1"):
            env = dict(os.environ, VALPERM_PURE=pure)
            subprocess.run([sys.executable, "-c", snippet, str(n)], env=env, check=True)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true",
                        help="include the n=4 enumeration in the end-to-end run")
    args = parser.parse_args()
    if _speedups is None:
        print("compiled extension not available; timing the pure kernels only\n")
    bench_micro()
    print()
    bench_end_to_end(args.full)


if __name__ == "__main__":
    main()
