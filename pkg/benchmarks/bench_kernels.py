#!/usr/bin/env python3
"""Compare the numba-compiled integrator with the pure-numpy fallback.

Each variant runs in its own interpreter because the backend is chosen once,
at import time, from RYDLINE_DISABLE_NUMBA.  The workload is the two-atom
exchange at the default operating point (Fock cutoff 8, 32 x 32 density
matrix) over a configurable number of coupling periods.

    python3 benchmarks/bench_kernels.py --periods 10 --repeat 3
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, math, sys, time
import numpy as np
from rydline import app, kernels
from rydline.config import build_config
from rydline.dynamics import QuantumState, _liouvillian_generator

periods, repeat = int(sys.argv[1]), int(sys.argv[2])
cfg = build_config({})
op = app.operating_point(cfg)
model = app._model(cfg, op, atom_count=2)
rho0 = np.array(QuantumState.basis(model, ("r2", "r1"), 0).density_matrix)
gen = _liouvillian_generator(model)
times = np.linspace(0.0, periods * 2 * math.pi / op.g_rate, 201)

t0 = time.perf_counter()
kernels.dopri5_evolve(rho0, *gen, times[:2], 1e-9, 1e-12, 10**7)  # compile or load cache
warmup = time.perf_counter() - t0

runs = []
for _ in range(repeat):
    t0 = time.perf_counter()
    samples, status, accepted, rejected = kernels.dopri5_evolve(rho0, *gen, times, 1e-9, 1e-12, 10**7)
    runs.append(time.perf_counter() - t0)

rhs_calls = 2000
rho = samples[-1].copy()
t0 = time.perf_counter()
for _ in range(rhs_calls):
    kernels.lindblad_rhs(rho, *gen)
rhs_time = (time.perf_counter() - t0) / rhs_calls

print(json.dumps({
    "numba": kernels.NUMBA_ENABLED,
    "warmup_s": warmup,
    "best_s": min(runs),
    "steps": accepted + rejected,
    "rhs_us": rhs_time * 1e6,
    "final_p_target": float(samples[-1][model.basis_index(("r1", "r2"), 0)].real[model.basis_index(("r1", "r2"), 0)]),
}))
"""


def run_variant(disable: bool, periods: int, repeat: int) -> dict:
    env = dict(os.environ, RYDLINE_DISABLE_NUMBA="1" if disable else "0")
    out = subprocess.run(
        [sys.executable, "-c", WORKER, str(periods), str(repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--periods", type=int, default=10, help="coupling periods to integrate")
    parser.add_argument("--repeat", type=int, default=3, help="timed repetitions per variant")
    args = parser.parse_args()

    fast = run_variant(False, args.periods, args.repeat)
    slow = run_variant(True, args.periods, args.repeat)
    if not fast["numba"]:
        print("numba is not installed; both variants use numpy (pip install 'rydline[fast]')")
    print(f"{'variant':<10}{'integrate [s]':>15}{'rhs [us]':>11}{'steps':>8}{'warm-up [s]':>13}")
    for name, r in (("numba", fast), ("numpy", slow)):
        print(f"{name:<10}{r['best_s']:>15.4f}{r['rhs_us']:>11.1f}{r['steps']:>8d}{r['warmup_s']:>13.3f}")
    print(f"speed-up {slow['best_s'] / fast['best_s']:.2f}x, "
          f"results differ by {abs(fast['final_p_target'] - slow['final_p_target']):.1e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
