"""Time the compiled kernels against the numpy/Python fallback.

    python benchmarks/bench_kernels.py [--len 2000000] [--repeat 3]
"""
import argparse
import random
import time

import numpy as np

from delayfec import _kernels
from delayfec.code import build_generator, derive_params


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def chain_job(length):
    return lambda: _kernels.ge_chain(2024, length, 5e-3, 0.45, 0.02, 1.0)


def elimination_job(count):
    P = derive_params(4, 7, 15)
    G = build_generator(P)
    rng = random.Random(1)
    deadlines = np.array([min(i + P.T, P.n) - 1 for i in range(1, P.k + 1)], dtype=np.int64)
    cases = []
    for _ in range(count):
        erased = np.array([rng.random() < 0.3 for _ in range(P.n)], dtype=np.uint8)
        cases.append((erased, erased[:P.k].copy()))
    y = np.zeros(P.n, dtype=np.int64)

    def run():
        for erased, pending in cases:
            _kernels.prefix_recovery(G.columns_array, y, erased, deadlines, pending, P.q, True)
    return run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--len", type=int, default=2_000_000, help="channel steps for the chain kernel")
    ap.add_argument("--patterns", type=int, default=2000, help="erasure patterns for elimination")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = ["python"] + (["compiled"] if _kernels.compiled is not None else [])
    jobs = {"ge_chain": chain_job(args.len), "prefix_recovery": elimination_job(args.patterns)}
    default = _kernels.BACKEND
    print(f"{'kernel':<16}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    try:
        for name, job in jobs.items():
            times = []
            for b in backends:
                _kernels.use_backend(b)
                times.append(best_of(job, args.repeat))
            speed = f"{times[0] / times[-1]:>9.1f}x" if len(times) > 1 else ""
            print(f"{name:<16}" + "".join(f"{t:>11.3f}s" for t in times) + speed)
    finally:
        _kernels.use_backend(default)


if __name__ == "__main__":
    main()
