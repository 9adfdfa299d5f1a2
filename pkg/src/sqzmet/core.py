"""Parameter set, reservoir quantities, and the analytic two-qubit state.

Two qubits, initially entangled as ``alpha|00> + e^{i phi} beta|11>``, pass
sequentially through a squeezed thermal reservoir.  With probability ``mu``
the reservoir acts collectively on both qubits, with probability ``1 - mu``
it acts on each qubit independently.  The reduced state at dimensionless
time ``tau`` is an X-state whose elements are known in closed form; this
module assembles that state and its partial derivatives with respect to
the encoded phase ``phi`` and the correlation factor ``mu``.

All angles are radians, all times are the dimensionless product of the
spontaneous-emission rate and physical time, and the temperature is in
units of the reservoir mode quantum.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "PhysicalConfig",
    "ReservoirDerived",
    "derive_reservoir",
    "initial_state",
    "analytic_state",
    "analytic_partials",
    "hermiticity_defect",
    "trace_defect",
    "min_eigenvalue",
    "x_structure_defect",
]


@dataclass(frozen=True)
class PhysicalConfig:
    """Full parameter set of one reservoir-engineering experiment.

    Attributes
    ----------
    tau : float
        Dimensionless evolution time (decay rate times physical time), >= 0.
    temp : float
        Reservoir temperature in units of the mode quantum, >= 0.
    r : float
        Squeezing strength, >= 0.
    phi_sq : float
        Squeezing phase in radians.
    mu : float
        Correlation factor in [0, 1]: probability that consecutive passes
        through the reservoir act as one collective channel.
    alpha : float
        Initial-state amplitude of ``|00>``, in [0, 1].  The ``|11>``
        amplitude ``beta = sqrt(1 - alpha**2)`` is always derived.
    phi : float
        Phase encoded in the initial state, radians.
    """

    tau: float
    temp: float
    r: float
    phi_sq: float
    mu: float
    alpha: float
    phi: float

    def __post_init__(self) -> None:
        for name in ("tau", "temp", "r", "phi_sq", "mu", "alpha", "phi"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if self.tau < 0:
            raise ValueError(f"tau must be >= 0, got {self.tau}")
        if self.temp < 0:
            raise ValueError(f"temp must be >= 0, got {self.temp}")
        if self.r < 0:
            raise ValueError(f"r must be >= 0, got {self.r}")
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError(f"mu must be in [0, 1], got {self.mu}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")

    @property
    def beta(self) -> float:
        """Amplitude of the ``|11>`` component, ``sqrt(1 - alpha**2)``."""
        return math.sqrt(max(0.0, 1.0 - self.alpha * self.alpha))

    def replace(self, **changes) -> "PhysicalConfig":
        """Return a copy with the given fields replaced."""
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class ReservoirDerived:
    """Reservoir quantities derived from (temp, r) and decay factors at tau.

    Attributes
    ----------
    n : float
        Mean thermal photon number of the unsqueezed reservoir.
    big_n : float
        Effective photon number ``n*cosh(2r) + sinh(r)**2``.
    chi : float
        Two-photon squeezing parameter ``-(2n+1)*sinh(2r)/2`` (<= 0).
    d : float
        Decay envelope ``exp(-(2*big_n + 1)*tau/2)``, in (0, 1].
    x : float
        ``d*cosh(chi*tau)``.
    y : float
        ``d*sinh(chi*tau)`` (<= 0; vanishes when r == 0 or tau == 0).
    """

    n: float
    big_n: float
    chi: float
    d: float
    x: float
    y: float


def _thermal_n(temp):
    """Mean photon number at temperature ``temp``, with temp=0 -> 0."""
    temp = np.asarray(temp, dtype=float)
    pos = temp > 0.0
    with np.errstate(over="ignore"):
        occ = 1.0 / np.expm1(1.0 / np.where(pos, temp, 1.0))
    return np.where(pos, occ, 0.0)


def _reservoir_arrays(tau, temp, r):
    """Broadcasted (n, big_n, chi, d, x, y) for arrays of parameters.

    ``x`` and ``y`` are evaluated as sums of two decaying exponentials:
    ``(2*big_n + 1)/2 = (2n+1)*cosh(2r)/2`` always exceeds ``|chi| =
    (2n+1)*sinh(2r)/2``, so both exponents are non-positive and the huge
    cosh/sinh factors never appear explicitly.
    """
    tau = np.asarray(tau, dtype=float)
    n = _thermal_n(temp)
    r = np.asarray(r, dtype=float)
    big_n = n * np.cosh(2.0 * r) + np.sinh(r) ** 2
    chi = -0.5 * (2.0 * n + 1.0) * np.sinh(2.0 * r)
    half_rate = 0.5 * (2.0 * big_n + 1.0)
    d = np.exp(-half_rate * tau)
    ep = np.exp((chi - half_rate) * tau)
    em = np.exp((-chi - half_rate) * tau)
    x = 0.5 * (ep + em)
    y = 0.5 * (ep - em)
    return n, big_n, chi, d, x, y


def derive_reservoir(config: PhysicalConfig) -> ReservoirDerived:
    """Compute the reservoir quantities and decay factors for ``config``."""
    n, big_n, chi, d, x, y = _reservoir_arrays(config.tau, config.temp, config.r)
    return ReservoirDerived(
        n=float(n), big_n=float(big_n), chi=float(chi),
        d=float(d), x=float(x), y=float(y),
    )


class StateParts(NamedTuple):
    """Elements of the two dynamical channels and their phase derivatives.

    The ``u`` fields belong to the independent (uncorrelated) channel, the
    ``c`` fields to the collective one.  ``d14u/d23u/d14c`` are derivatives
    with respect to ``phi``; ``dmu14`` is the coherence difference
    ``r14c - r14u`` grouped so that it vanishes identically at ``tau == 0``.
    """

    r11u: np.ndarray
    r22u: np.ndarray
    r44u: np.ndarray
    r14u: np.ndarray
    r23u: np.ndarray
    r11c: np.ndarray
    r44c: np.ndarray
    r14c: np.ndarray
    d14u: np.ndarray
    d23u: np.ndarray
    d14c: np.ndarray
    dmu14: np.ndarray


def state_parts(tau, temp, r, phi_sq, alpha, phi) -> StateParts:
    """Channel-resolved X-state elements, broadcasting over array inputs."""
    phi_sq = np.asarray(phi_sq, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    phi = np.asarray(phi, dtype=float)
    n, big_n, chi, d, x, y = _reservoir_arrays(tau, temp, r)

    beta2 = 1.0 - alpha**2
    ab = alpha * np.sqrt(np.maximum(beta2, 0.0))
    two_n1 = 2.0 * big_n + 1.0
    q = two_n1 * beta2 - big_n
    v = two_n1 * beta2 + big_n**2
    d2 = d * d
    d4 = d2 * d2
    denom = two_n1**2

    r11u = ((1.0 + big_n) ** 2 - 2.0 * (1.0 + big_n) * q * d2 + v * d4) / denom
    r44u = (big_n**2 + 2.0 * big_n * q * d2 + v * d4) / denom
    # factored form of (N(1+N) + Q d^2 - V d^4): exact zero at tau == 0
    r22u = (1.0 - d2) * (v * d2 + big_n * (1.0 + big_n)) / denom

    em_phi = np.exp(-1j * phi)
    e_p2s = np.exp(1j * (phi - 2.0 * phi_sq))
    e_p1s = np.exp(1j * (phi - phi_sq))
    x2 = x * x
    y2 = y * y

    r14u = ab * (em_phi * x2 + e_p2s * y2)
    r23u = -ab * 2.0 * x * y * np.cos(phi - phi_sq)

    r11c = (big_n + 1.0 - q * d2) / two_n1
    r44c = (big_n + q * d2) / two_n1
    r14c = ab * (em_phi * x - e_p1s * y)

    d14u = ab * 1j * (-em_phi * x2 + e_p2s * y2)
    d23u = ab * 2.0 * x * y * np.sin(phi - phi_sq)
    d14c = ab * (-1j) * (em_phi * x + e_p1s * y)

    dmu14 = ab * (em_phi * (x - x2) - e_p1s * y - e_p2s * y2)

    return StateParts(r11u, r22u, r44u, r14u, r23u, r11c, r44c, r14c,
                      d14u, d23u, d14c, dmu14)


def _x_matrix(r11, r22, r33, r44, r14, r23):
    """Assemble X-structured matrices from (broadcastable) elements."""
    shape = np.broadcast(r11, r22, r33, r44, r14, r23).shape
    out = np.zeros(shape + (4, 4), dtype=complex)
    out[..., 0, 0] = r11
    out[..., 1, 1] = r22
    out[..., 2, 2] = r33
    out[..., 3, 3] = r44
    out[..., 0, 3] = r14
    out[..., 3, 0] = np.conj(r14)
    out[..., 1, 2] = r23
    out[..., 2, 1] = np.conj(r23)
    return out


def state_matrix(tau, temp, r, phi_sq, mu, alpha, phi) -> np.ndarray:
    """Analytic state as an array of 4x4 matrices, broadcasting over inputs."""
    p = state_parts(tau, temp, r, phi_sq, alpha, phi)
    mu = np.asarray(mu, dtype=float)
    mub = 1.0 - mu
    r11 = mub * p.r11u + mu * p.r11c
    r44 = mub * p.r44u + mu * p.r44c
    r22 = mub * p.r22u + np.zeros_like(mu)
    r14 = mub * p.r14u + mu * p.r14c
    r23 = mub * p.r23u + np.zeros_like(mu) * 1j
    return _x_matrix(r11, r22, r22, r44, r14, r23)


def partial_matrices(tau, temp, r, phi_sq, mu, alpha, phi):
    """(d rho/d phi, d rho/d mu) as broadcasted stacks of 4x4 matrices."""
    p = state_parts(tau, temp, r, phi_sq, alpha, phi)
    mu = np.asarray(mu, dtype=float)
    mub = 1.0 - mu
    zero = np.zeros(np.broadcast(mu, p.r22u).shape)

    d14 = mub * p.d14u + mu * p.d14c
    d23 = mub * p.d23u + 0j
    drho_phi = _x_matrix(zero, zero, zero, zero, d14, d23)

    # d rho11/d mu = d rho44/d mu = r22u holds identically for these channels
    dmu_diag = p.r22u + zero
    drho_mu = _x_matrix(dmu_diag, -dmu_diag, -dmu_diag, dmu_diag,
                        p.dmu14 + 0.0 * mu, -p.r23u + 0.0 * mu + 0j)
    return drho_phi, drho_mu


def initial_state(alpha: float, phi: float) -> np.ndarray:
    """Projector onto ``alpha|00> + e^{i phi} sqrt(1-alpha^2)|11>``."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    beta = math.sqrt(max(0.0, 1.0 - alpha * alpha))
    psi = np.zeros(4, dtype=complex)
    psi[0] = alpha
    psi[3] = beta * np.exp(1j * phi)
    return np.outer(psi, psi.conj())


def analytic_state(config: PhysicalConfig) -> np.ndarray:
    """Closed-form reduced state at ``config.tau``.

    Returns a 4x4 complex Hermitian unit-trace matrix in the basis
    ``|00>, |01>, |10>, |11>`` with the X-structure of the mixed
    independent/collective squeezed-reservoir dynamics.
    """
    return state_matrix(config.tau, config.temp, config.r, config.phi_sq,
                        config.mu, config.alpha, config.phi)


def analytic_partials(config: PhysicalConfig) -> tuple[np.ndarray, np.ndarray]:
    """Exact partial derivatives (d rho/d phi, d rho/d mu) at ``config``.

    Both outputs are Hermitian and traceless; d rho/d mu is the collective
    minus the independent channel state and vanishes identically at
    ``tau == 0``.
    """
    return partial_matrices(config.tau, config.temp, config.r, config.phi_sq,
                            config.mu, config.alpha, config.phi)


def hermiticity_defect(rho: np.ndarray) -> float:
    """Largest elementwise deviation from Hermiticity."""
    return float(np.max(np.abs(rho - rho.conj().T)))


def trace_defect(rho: np.ndarray) -> float:
    """``|Tr(rho) - 1|``."""
    return float(abs(np.trace(rho) - 1.0))


def min_eigenvalue(rho: np.ndarray) -> float:
    """Smallest eigenvalue of the Hermitian part of ``rho``."""
    return float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])


def x_structure_defect(rho: np.ndarray) -> float:
    """Largest magnitude among entries forbidden by the X structure."""
    mask = np.array(
        [
            [0, 1, 1, 0],
            [1, 0, 0, 1],
            [1, 0, 0, 1],
            [0, 1, 1, 0],
        ],
        dtype=bool,
    )
    return float(np.max(np.abs(rho[mask])))
