"""Direct numerical integration of the two reservoir channels.

Serves as the brute-force cross-check of the analytic state: both channel
master equations are integrated from the initial entangled state with a
fixed-step RK4 scheme and mixed with weights ``(1 - mu, mu)`` at the output
time.  Because both generators are linear, mixing at the end is identical
to mixing throughout.

The propagation loop runs in a compiled extension when available and in a
pure-Python kernel otherwise; ``KERNEL_BACKEND`` reports which one was
selected at import time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _rk4_py
from .core import PhysicalConfig, ReservoirDerived, derive_reservoir, initial_state

try:
    from . import _rk4 as _kernel
except ImportError:  # extension not built; fall back to the Python kernel
    _kernel = _rk4_py

KERNEL_BACKEND: str = _kernel.BACKEND

__all__ = [
    "IntegratorSettings",
    "KERNEL_BACKEND",
    "integrate",
    "rhs_correlated",
    "rhs_uncorrelated",
]


@dataclass(frozen=True)
class IntegratorSettings:
    """Fixed-step integrator configuration.

    ``method`` only admits "rk4"; the field exists so serialized settings
    stay forward-compatible.
    """

    step: float = 1e-4
    method: str = "rk4"

    def __post_init__(self) -> None:
        if not (0.0 < self.step <= 1e-2):
            raise ValueError(f"step must be in (0, 1e-2], got {self.step}")
        if self.method != "rk4":
            raise ValueError(f"unknown method {self.method!r}")


def rhs_uncorrelated(rho: np.ndarray, res: ReservoirDerived,
                     phi_sq: float) -> np.ndarray:
    """Time derivative of the independent-channel state.

    Each qubit exchanges quanta with the squeezed reservoir on its own:
    heating at rate ``N``, cooling at rate ``N + 1``, plus the anomalous
    two-photon terms proportional to the squeezing parameter.
    """
    return _rk4_py.rhs_u(np.asarray(rho, dtype=complex), res.big_n, res.chi, phi_sq)


def rhs_correlated(rho: np.ndarray, res: ReservoirDerived,
                   phi_sq: float) -> np.ndarray:
    """Time derivative of the collective-channel state (joint flips only)."""
    return _rk4_py.rhs_c(np.asarray(rho, dtype=complex), res.big_n, res.chi, phi_sq)


def _schedule(tau: float, step: float) -> tuple[int, float]:
    """Number of full steps and the shortened final step covering ``tau``."""
    if tau == 0.0:
        return 0, 0.0
    n_full = int(math.floor(tau / step + 1e-9))
    rem = tau - n_full * step
    if rem < step * 1e-9:
        rem = 0.0
    return n_full, rem


def integrate(config: PhysicalConfig,
              settings: IntegratorSettings = IntegratorSettings()) -> np.ndarray:
    """Propagate both channels from the initial state and mix them.

    Returns ``(1 - mu) * rho_u(tau) + mu * rho_c(tau)`` with both channel
    states obtained by fixed-step RK4 integration.  ``tau`` that is not an
    integer multiple of the step is covered by shortening the last step.
    """
    rho0 = initial_state(config.alpha, config.phi)
    if config.tau == 0.0:
        return rho0
    res = derive_reservoir(config)
    n_full, rem = _schedule(config.tau, settings.step)
    rho_u, rho_c = _kernel.propagate(rho0, rho0, n_full, settings.step, rem,
                                     res.big_n, res.chi, config.phi_sq)
    out = (1.0 - config.mu) * rho_u + config.mu * rho_c
    if not np.all(np.isfinite(out.view(float))):
        raise FloatingPointError("integration produced non-finite entries")
    return out
