"""Compare the compiled kernels against the pure-numpy fallback.

Runs the same workloads twice in child processes — once normally (numba)
and once with ELPRIOR_NO_NUMBA=1 — and prints both timings side by side.

    python3 benchmarks/bench_kernels.py [--reps 300]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def workload(reps):
    import numpy as np

    from elprior import (DEFAULT_SEED, PriorSpec, SampleMomentOracle,
                         ScenarioSpec, exponential, penalized_mele, run_cell,
                         second_moment_ratio_spec, solve_lambda)
    from elprior.kernels import USE_NUMBA

    rng = np.random.default_rng(DEFAULT_SEED)
    results = {"numba": USE_NUMBA}

    # warm-up triggers JIT compilation so it is not billed to the timings
    spec = second_moment_ratio_spec()
    warm = rng.exponential(size=30)
    penalized_mele(warm, spec, PriorSpec(spec, SampleMomentOracle(warm)))

    gsets = []
    while len(gsets) < 2000:
        g = rng.normal(size=50)
        if g.min() < 0.0 < g.max():
            gsets.append(g)
    t0 = time.perf_counter()
    for g in gsets:
        solve_lambda(g)
    results["lambda_solves_2000_n50_s"] = time.perf_counter() - t0

    samples = [rng.exponential(size=25) for _ in range(200)]
    t0 = time.perf_counter()
    for x in samples:
        penalized_mele(x, spec, PriorSpec(spec, SampleMomentOracle(x)))
    results["penalized_mele_200_n25_s"] = time.perf_counter() - t0

    sc = ScenarioSpec(spec=spec, dist=exponential(1), n_list=(50,),
                      reps=reps, seed=DEFAULT_SEED)
    t0 = time.perf_counter()
    run_cell(sc, 50)
    results[f"run_cell_{reps}reps_n50_s"] = time.perf_counter() - t0

    print(json.dumps(results))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=300,
                        help="replications for the run_cell workload")
    parser.add_argument("--child", action="store_true",
                        help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.child:
        workload(args.reps)
        return

    runs = {}
    for label, no_numba in (("numba", ""), ("numpy fallback", "1")):
        env = dict(os.environ, ELPRIOR_NO_NUMBA=no_numba)
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--child",
             "--reps", str(args.reps)],
            env=env, capture_output=True, text=True, check=True)
        runs[label] = json.loads(proc.stdout.strip().splitlines()[-1])

    keys = [k for k in runs["numba"] if k != "numba"]
    width = max(len(k) for k in keys)
    print(f"{'workload':<{width}}  {'numba':>10}  {'fallback':>10}  speedup")
    for k in keys:
        a = runs["numba"][k]
        b = runs["numpy fallback"][k]
        print(f"{k:<{width}}  {a:>9.3f}s  {b:>9.3f}s  {b / a:>6.1f}x")


if __name__ == "__main__":
    main()
