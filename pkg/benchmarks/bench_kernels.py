"""Benchmark the numba kernels against the pure-numpy fallback.

Runs each backend in a subprocess (the backend is chosen at import time via
``TRUECOUNT_NO_NUMBA``), checks that both produce bit-identical simulation
reports, and prints per-kernel timings.

Usage: python benchmarks/bench_kernels.py [--trials 20000] [--repeat 3]
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = """
import json, time
import numpy as np
from truecount import kernels
from truecount.counting import get_system
from truecount.seats import SeatCardModel
from truecount.sim import simulate_seat_sigma, simulate_bankroll, FixedAdvantageModel

trials, repeat = {trials}, {repeat}

rng = np.random.default_rng(7)
r_cut = rng.integers(-60, 60, size=trials).astype(np.int64)
tail = rng.integers(-2, 3, size=(trials, 30)).astype(np.int64)
n_bet = rng.integers(16, 24, size=trials).astype(np.int64)
n_play = rng.integers(0, 6, size=trials).astype(np.int64)
u = rng.random(200_000)
u2 = rng.random(200_000)

def bench(fn, *args):
    fn(*args)  # warm-up (includes jit compilation)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best

timings = {{
    "backend": kernels.backend_name(),
    "seat_tallies": bench(kernels.seat_tallies, r_cut, tail, n_bet, n_play),
    "count_wins": bench(kernels.count_wins, u, 0.52),
    "count_wins_two_state": bench(kernels.count_wins_two_state, u, u2, 0.50, 0.54),
}}

model = SeatCardModel(seats=7, position=7)
report = simulate_seat_sigma(get_system("hi-lo"), 8, 0.5, model, 500, 123)
bank = simulate_bankroll(FixedAdvantageModel(0.52), 1000, 200, 456)
timings["seat_sigma_report"] = report.to_json()
timings["bankroll_report"] = bank.to_json()
print(json.dumps(timings))
"""


def run_backend(disable_numba: bool, trials: int, repeat: int) -> dict:
    env = dict(os.environ)
    env["TRUECOUNT_NO_NUMBA"] = "1" if disable_numba else ""
    code = WORKER.format(trials=trials, repeat=repeat)
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(out.stdout)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=20000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    numba = run_backend(False, args.trials, args.repeat)
    numpy_ = run_backend(True, args.trials, args.repeat)
    if numba["backend"] == numpy_["backend"]:
        print("warning: numba unavailable; both runs used the numpy backend")

    print(f"{'kernel':<24}{'numba (s)':>12}{'numpy (s)':>12}{'speedup':>9}")
    for key in ("seat_tallies", "count_wins", "count_wins_two_state"):
        tn, tp = numba[key], numpy_[key]
        print(f"{key:<24}{tn:>12.6f}{tp:>12.6f}{tp / tn:>8.1f}x")

    same = numba["seat_sigma_report"] == numpy_["seat_sigma_report"] and (
        numba["bankroll_report"] == numpy_["bankroll_report"]
    )
    print(f"report parity across backends: {'identical' if same else 'MISMATCH'}")
    return 0 if same else 1


if __name__ == "__main__":
    sys.exit(main())
