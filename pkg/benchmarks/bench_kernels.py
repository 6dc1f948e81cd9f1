#!/usr/bin/env python3
"""Compare the compiled and pure-python kernel backends.

Times the individual kernels on synthetic inputs and then whole
simulation runs, reporting medians and the resulting speedups.  Run it
from the repository root:

    python3 benchmarks/bench_kernels.py [--rounds N] [--repeats K]
"""
import argparse
import statistics
import time

import numpy as np

from wsnsim import ScenarioConfig, run_scenario, use_backend, warmup
from wsnsim import _kernels


def timeit(fn, repeats):
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def kernel_workloads(n=100, heads=10, seed=123):
    rng = np.random.default_rng(seed)
    px, py = rng.uniform(0, 100, n), rng.uniform(0, 100, n)
    sx, sy = rng.uniform(0, 100, heads), rng.uniform(0, 100, heads)
    u = rng.random(n)
    p = np.full(n, 0.1)
    rm = np.full(n, 3.0)
    flags = np.ones(n, np.bool_)
    gate = rng.random(n) < 0.6
    assign = rng.integers(0, n, n).astype(np.int64)
    d2ch = rng.uniform(0, 5000, n)
    resid = rng.uniform(0.1, 0.5, n)
    order = np.arange(heads, dtype=np.int64)
    signals = rng.integers(0, 9, n).astype(np.int64)
    tx_d2 = rng.uniform(0, 9000, heads)
    target = np.full(heads, -1, np.int64)
    alpha_order = np.argsort(rng.random(n)).astype(np.int64)

    e_elec_b, e_fs_b, e_mp_b, e_da_b, d0sq = 2e-4, 4e-8, 5.2e-12, 2e-5, 7692.3
    return {
        "nearest_site": lambda impl: impl["nearest_site"](px, py, sx, sy),
        "election_mask": lambda impl: impl["election_mask"](u, p, rm, flags, flags),
        "member_phase": lambda impl: impl["member_phase"](
            gate, assign, d2ch, resid.copy(), e_elec_b, e_fs_b, e_mp_b, d0sq),
        "relay_phase": lambda impl: impl["relay_phase"](
            order, signals.copy(), resid.copy(), tx_d2, target,
            e_elec_b, e_fs_b, e_mp_b, e_da_b, d0sq),
        "greedy_cover": lambda impl: impl["greedy_cover"](
            alpha_order, px, py, ~flags, 625.0),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rounds", type=int, default=2000,
                    help="rounds per end-to-end run (default 2000)")
    ap.add_argument("--repeats", type=int, default=9,
                    help="timing repetitions per measurement (default 9)")
    args = ap.parse_args()

    if "numba" not in _kernels.BACKENDS:
        print("numba backend unavailable; nothing to compare")
        return

    warmup()  # compile everything before the clocks start

    print(f"== kernel micro-benchmarks (median of {args.repeats}) ==")
    loops = 200
    for name, call in kernel_workloads().items():
        times = {}
        for backend in ("python", "numba"):
            impl = _kernels.BACKENDS[backend]

            def run(impl=impl, call=call):
                for _ in range(loops):
                    call(impl)

            times[backend] = timeit(run, args.repeats) / loops
        speedup = times["python"] / times["numba"]
        print(f"{name:14s} python {times['python'] * 1e6:8.1f} us   "
              f"numba {times['numba'] * 1e6:8.1f} us   x{speedup:.1f}")

    print(f"\n== end-to-end runs ({args.rounds} rounds, median of 3) ==")
    cfg = ScenarioConfig(rounds=args.rounds)
    overall = {}
    for backend in ("python", "numba"):
        use_backend(backend)
        per_proto = {}
        for proto in ("leach", "teen", "deec", "hteen", "campteen"):
            per_proto[proto] = timeit(
                lambda p=proto: run_scenario(cfg, p, "static_center", 1), 3)
        overall[backend] = per_proto
    use_backend("numba")

    total = {"python": 0.0, "numba": 0.0}
    for proto in overall["numba"]:
        tp, tn = overall["python"][proto], overall["numba"][proto]
        total["python"] += tp
        total["numba"] += tn
        print(f"{proto:9s} python {tp:7.3f} s   numba {tn:7.3f} s   x{tp / tn:.1f}")
    print(f"{'total':9s} python {total['python']:7.3f} s   "
          f"numba {total['numba']:7.3f} s   x{total['python'] / total['numba']:.1f}")


if __name__ == "__main__":
    main()
