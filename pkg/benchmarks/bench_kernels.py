"""Compare the compiled and pure-Python clustering kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Times HAC agglomeration on the 2K-sample distance table and the balanced
round-robin assignment at the default array size, plus one full trial of the
default scenario, for every available backend.
"""
import argparse
import time

import numpy as np

from hybridclust import kernels
from hybridclust.ahp import assignment_distances
from hybridclust.digital import full_digital_precoder
from hybridclust.fhp import RfSampleSet
from hybridclust.harness.config import ScenarioConfig
from hybridclust.harness.runner import channel_params, run_trial, trial_rng
from hybridclust.channel import design_combiners, generate_channels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()

    cfg = ScenarioConfig(trials=1)
    real = generate_channels(channel_params(cfg), trial_rng(cfg.master_seed, 0, 0))
    h_eq = design_combiners(real).H_eq
    f_opt = full_digital_precoder(h_eq)
    table = RfSampleSet.from_precoder(f_opt).pairwise  # 16 x 16
    big = np.abs(np.random.default_rng(0).standard_normal((64, 64)))
    big = big + big.T
    u = np.linalg.svd(f_opt, full_matrices=False)[0]
    dist = assignment_distances(np.sqrt(8) * u, np.linalg.qr(np.random.default_rng(1).standard_normal((8, 8)))[0])

    cases = {
        "hac 16 -> 8": lambda: kernels.hac_merge(table, 8),
        "hac 64 -> 8": lambda: kernels.hac_merge(big, 8),
        "round robin 64x8": lambda: kernels.round_robin(dist, 8),
        "default trial": lambda: run_trial(cfg, 0),
    }
    start = kernels.backend_name()
    results = {}
    for backend in sorted(kernels.BACKENDS):
        kernels.use_backend(backend)
        for name, fn in cases.items():
            repeat = max(1, args.repeat // 10) if name == "default trial" else args.repeat
            results[(name, backend)] = best_of(fn, repeat)
    kernels.use_backend(start)

    backends = sorted(kernels.BACKENDS)
    print(f"{'case':20s}" + "".join(f"{b:>14s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name in cases:
        row = f"{name:20s}" + "".join(f"{results[(name, b)] * 1e3:12.3f}ms" for b in backends)
        if len(backends) > 1:
            row += f"{results[(name, 'python')] / results[(name, 'compiled')]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
