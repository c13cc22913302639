"""Throughput comparison of the compiled kernels against the pure-Python
fallback on the hot loops (policy simulation and the offline DP).

Run:  python benchmarks/compare_backends.py [--slots N] [--repeat K]
"""

import argparse
import time

import numpy as np

from edgehost import CostParams, HostingLadder
from edgehost import _pykernels

try:
    from edgehost import _kernels
except ImportError:
    _kernels = None


def bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--slots", type=int, default=100_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    ladder = HostingLadder.from_pairs([(0.0, 1.0), (0.5, 0.45), (1.0, 0.0)])
    params = CostParams(c=0.45, M=5.0, kappa=1.0)
    rng = np.random.default_rng(0)
    r = np.where(rng.random(args.slots) < 0.4, 1.0, 0.0)
    gamma = rng.standard_normal(3)

    workloads = {
        "ftpl": lambda impl: impl.ftpl_family_run(r, ladder, params, gamma,
                                                  0.1, 0, False, 6.0, 0.0),
        "wftpl": lambda impl: impl.ftpl_family_run(r, ladder, params, gamma,
                                                   0.1, 0, True, 6.0, 0.0),
        "alpha-rr": lambda impl: impl.alpha_rr_run(r, ladder, params),
        "offline-dp": lambda impl: impl.offline_dp(r, ladder, params),
    }

    backends = [("python", _pykernels)]
    if _kernels is not None:
        backends.append(("cython", _kernels))
    else:
        print("compiled kernels not built; benchmarking the fallback only")

    print(f"{args.slots} slots, best of {args.repeat}")
    print(f"{'workload':<12}" + "".join(f"{name:>14}" for name, _ in backends)
          + ("       speedup" if _kernels is not None else ""))
    for name, make in workloads.items():
        times = [bench(lambda impl=impl: make(impl), args.repeat)
                 for _, impl in backends]
        row = f"{name:<12}" + "".join(f"{t * 1e3:>12.1f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>12.1f}x"
        print(row)

    if _kernels is not None:
        # the fallback must agree bit for bit, not just be slower
        for name, make in workloads.items():
            a, b = make(_pykernels), make(_kernels)
            a = a if isinstance(a, tuple) else (a,)
            b = b if isinstance(b, tuple) else (b,)
            assert all(np.array_equal(x, y) for x, y in zip(a, b)), name
        print("backends agree bit-for-bit on all workloads")


if __name__ == "__main__":
    main()
