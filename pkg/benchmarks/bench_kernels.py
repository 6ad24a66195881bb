"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 1]

Part one times the kernels in isolation on random integer data. Part two
runs the same end-to-end workload (vertex/facet conversion, LPs and
certificates on random polytopes) in two subprocesses, one per backend.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from paretocert import _kernels_py

try:
    from paretocert import _ckernels
except ImportError:
    _ckernels = None


WORKLOAD = """
import random, time
from paretocert import hull, construct_certificate, is_maximal, kernels
rng = random.Random({seed})
t = time.perf_counter()
for _ in range(30):
    d = rng.randint(3, 4)
    pts = [tuple(rng.randint(-20, 20) for _ in range(d)) for _ in range(10)]
    h = hull(pts)
    for v in h.vrep.vertices:
        if is_maximal(h, v).maximal:
            construct_certificate(h, v, "flag")
print(kernels.BACKEND, time.perf_counter() - t)
"""


def kernel_cases(rng):
    T = [[rng.randint(-10**6, 10**6) for _ in range(40)] for _ in range(25)]
    masks = [rng.getrandbits(60) for _ in range(120)]
    pos, neg = list(range(60)), list(range(60, 120))
    p = [rng.randint(1, 10**9)] + [rng.randint(-10**9, 10**9) for _ in range(12)]
    n = [rng.randint(-10**9, -1)] + [rng.randint(-10**9, 10**9) for _ in range(12)]

    def pivot(mod):
        def run():
            A = [row[:] for row in T]
            D = 1
            for k in range(5):
                c = k
                r = next(i for i in range(k, len(A)) if A[i][c])
                D = mod.pivot(A, D, r, c)
        return run

    return {
        "pivot x5 (25x40)": pivot,
        "adjacent_pairs (60x60)": lambda mod: lambda: mod.adjacent_pairs(pos, neg, masks),
        "combine (13 entries)": lambda mod: lambda: mod.combine(p, n, 0),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    if _ckernels is None:
        print("compiled kernels not built; only the pure backend is available")
    print(f"{'kernel':28} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for name, make in kernel_cases(random.Random(args.seed)).items():
        number = 200
        t_py = min(timeit.repeat(make(_kernels_py), number=number, repeat=args.repeat)) / number * 1e3
        if _ckernels is None:
            print(f"{name:28} {t_py:12.4f} {'-':>12} {'-':>8}")
            continue
        t_c = min(timeit.repeat(make(_ckernels), number=number, repeat=args.repeat)) / number * 1e3
        print(f"{name:28} {t_py:12.4f} {t_c:12.4f} {t_py / t_c:7.2f}x")

    print("\nend to end (30 random polytopes, flag certificates at every maximal vertex)")
    results = {}
    for pure in ("1", "0"):
        env = dict(os.environ, PARETOCERT_PURE=pure)
        out = subprocess.run([sys.executable, "-c", WORKLOAD.format(seed=args.seed)],
                             env=env, capture_output=True, text=True, check=True).stdout.split()
        results[out[0]] = float(out[1])
        print(f"  {out[0]:8} {float(out[1]):8.2f} s")
    if len(results) == 2:
        print(f"  speedup  {results['python'] / results['cython']:8.2f}x")


if __name__ == "__main__":
    main()
