"""Benchmark the compiled propagation kernel against the Python fallback.

Usage: python benchmarks/bench_rk4.py [--tau 2.0] [--step 1e-4] [--repeat 3]

Reports wall time per propagation and the speedup, and checks that both
kernels agree elementwise.
"""

import argparse
import math
import time

import numpy as np

from sqzmet import _rk4_py
from sqzmet.core import PhysicalConfig, derive_reservoir, initial_state

try:
    from sqzmet import _rk4
except ImportError:
    _rk4 = None


def run(kernel, rho0, n_steps, step, res, phi_sq, repeat):
    best = math.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = kernel.propagate(rho0, rho0, n_steps, step, 0.0,
                               res.big_n, res.chi, phi_sq)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tau", type=float, default=2.0)
    parser.add_argument("--step", type=float, default=1e-4)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    cfg = PhysicalConfig(tau=args.tau, temp=0.5, r=1.0, phi_sq=0.7, mu=0.5,
                         alpha=math.sqrt(2) / 2, phi=0.3)
    res = derive_reservoir(cfg)
    rho0 = initial_state(cfg.alpha, cfg.phi)
    n_steps = int(round(args.tau / args.step))
    print(f"propagating both channels for {n_steps} RK4 steps "
          f"(tau={args.tau}, step={args.step})")

    t_py, out_py = run(_rk4_py, rho0, n_steps, args.step, res, cfg.phi_sq,
                       max(1, args.repeat // 3))
    print(f"python kernel : {t_py * 1e3:10.1f} ms")

    if _rk4 is None:
        print("compiled kernel not available")
        return
    t_cy, out_cy = run(_rk4, rho0, n_steps, args.step, res, cfg.phi_sq,
                       args.repeat)
    dev = max(np.max(np.abs(out_cy[0] - out_py[0])),
              np.max(np.abs(out_cy[1] - out_py[1])))
    print(f"compiled kernel: {t_cy * 1e3:10.1f} ms")
    print(f"speedup        : {t_py / t_cy:10.1f}x")
    print(f"max |delta|    : {dev:10.2e}")


if __name__ == "__main__":
    main()
