"""Quantum Fisher information over the encoded phase and correlation factor.

Two independent routes are provided and cross-validated:

* the generic spectral formula, summing matrix elements of the state
  derivatives over eigenpairs of the state (restricted to its support);
* closed forms specialized to the X-state produced by the reservoir
  dynamics, split into an inner-block contribution and a coherence-block
  contribution expressed through logarithmic derivatives of the
  ``|00><11|`` coherence.

The spectral route is total (defined at ``tau == 0`` and ``mu == 1``);
the closed forms carry removable-limit guards and are arbitrated by the
spectral route wherever both are defined.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import PhysicalConfig, partial_matrices, state_matrix, state_parts
from .errors import NumericError

__all__ = [
    "Qfim2",
    "SpectralDecomposition",
    "closed_form_f_mu",
    "closed_form_f_muphi",
    "closed_form_f_phi",
    "eig_hermitian_4x4",
    "g_terms",
    "qfim",
    "qfim_generic",
]

SUPPORT_TOL = 1e-12
LIMIT_TOL = 1e-14
COHERENCE_TOL = 1e-12
MU_ONE_SHIFT = 1e-9


@dataclass(frozen=True)
class Qfim2:
    """2x2 information matrix over (phi, mu).

    ``f_phi`` and ``f_mu`` are the diagonal elements (the per-parameter
    quantum Fisher information); ``f_muphi`` is the off-diagonal element
    quantifying estimator correlations.
    """

    f_phi: float
    f_mu: float
    f_muphi: float

    @property
    def det(self) -> float:
        return self.f_phi * self.f_mu - self.f_muphi**2


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenpairs of a 4x4 Hermitian matrix, eigenvalues descending.

    ``eigenvectors[:, k]`` belongs to ``eigenvalues[k]``; each vector's
    first component above 1e-12 in magnitude is made real and positive.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def eig_hermitian_4x4(rho: np.ndarray) -> SpectralDecomposition:
    """Orthonormal eigendecomposition with a deterministic convention."""
    lam, vec = np.linalg.eigh(np.asarray(rho, dtype=complex))
    lam = lam[::-1].copy()
    vec = vec[:, ::-1].copy()
    for k in range(4):
        col = vec[:, k]
        nz = np.nonzero(np.abs(col) > 1e-12)[0]
        if nz.size:
            c = col[nz[0]]
            vec[:, k] = col * (np.conj(c) / abs(c))
    # exact eigenvalue ties: order by the phase-fixed vectors
    order = sorted(range(4), key=lambda k: (-lam[k], tuple(
        (vec[i, k].real, vec[i, k].imag) for i in range(4))))
    return SpectralDecomposition(lam[order], vec[:, order])


def _qfim_elements(rho, *drhos):
    """Spectral-formula QFIM elements, batched over leading axes.

    Returns the upper triangle of the information matrix over the given
    derivatives as a dict keyed by index pairs.
    """
    lam, u = np.linalg.eigh(rho)
    uh = np.swapaxes(u, -1, -2).conj()
    mats = [uh @ d @ u for d in drhos]
    s = lam[..., :, None] + lam[..., None, :]
    keep = s > SUPPORT_TOL
    w = np.where(keep, 2.0 / np.where(keep, s, 1.0), 0.0)
    out = {}
    for a in range(len(mats)):
        for b in range(a, len(mats)):
            prod = (mats[a] * np.conj(mats[b])).real  # A_ij * conj(B_ij) = A_ij B_ji
            out[(a, b)] = np.sum(w * prod, axis=(-2, -1))
    return out

def qfim_generic(rho: np.ndarray, drho_a: np.ndarray,
                 drho_b: np.ndarray) -> float:
    """One information-matrix element from the spectral formula.

    Eigenpairs whose eigenvalue sum is at most 1e-12 are excluded, which
    restricts the sum to the state's support and yields the pure-state
    value at rank deficiency.  With ``drho_a is drho_b`` this is the QFI
    of that parameter.
    """
    elems = _qfim_elements(np.asarray(rho, dtype=complex),
                           np.asarray(drho_a, dtype=complex),
                           np.asarray(drho_b, dtype=complex))
    return float(elems[(0, 1)])


def spectral_qfim_grid(tau, temp, r, phi_sq, mu, alpha, phi):
    """(f_phi, f_mu, f_muphi) over broadcasted parameter arrays."""
    rho = state_matrix(tau, temp, r, phi_sq, mu, alpha, phi)
    dphi, dmu = partial_matrices(tau, temp, r, phi_sq, mu, alpha, phi)
    shape = np.broadcast_shapes(rho.shape, dphi.shape, dmu.shape)
    rho = np.broadcast_to(rho, shape)
    dphi = np.broadcast_to(dphi, shape)
    dmu = np.broadcast_to(dmu, shape)
    elems = _qfim_elements(rho, dphi, dmu)
    return elems[(0, 0)], elems[(1, 1)], elems[(0, 1)]


def g_terms(config: PhysicalConfig):
    """Squeezing-phase structure functions of the coherence magnitude.

    ``g0`` enters the inner-block information; ``g1``/``g2``/``g3`` are the
    independent, collective, and mixed-channel contributions to the
    squared ``|00><11|`` coherence (weighted by the amplitude product and
    channel weights).
    """
    vals = _g_terms_arrays(config.tau, config.temp, config.r, config.phi_sq,
                           config.mu, config.alpha, config.phi)
    return tuple(float(v) for v in vals)


def _g_terms_arrays(tau, temp, r, phi_sq, mu, alpha, phi):
    from .core import _reservoir_arrays

    _, _, _, _, x, y = _reservoir_arrays(tau, temp, r)
    phi_sq = np.asarray(phi_sq, dtype=float)
    phi = np.asarray(phi, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    mu = np.asarray(mu, dtype=float)
    a2b2 = alpha**2 * (1.0 - alpha**2)
    c2 = np.cos(2.0 * phi_sq - 2.0 * phi)
    c1 = np.cos(phi_sq - 2.0 * phi)
    g0 = (1.0 - mu) ** 2 * a2b2 * (2.0 * x * y) ** 2
    g1 = x**4 + y**4 + 2.0 * x**2 * y**2 * c2
    g2 = x**2 + y**2 - 2.0 * x * y * c1
    g3 = x**3 - x**2 * y * c1 + x * y**2 * c2 - y**3 * np.cos(phi_sq)
    return g0, g1, g2, g3


def _limit_div(num, den, tol=LIMIT_TOL):
    """Division treating the 0/0 corner as the removable limit 0.

    A vanishing denominator with a non-vanishing numerator yields NaN,
    which the scalar wrappers convert into :class:`NumericError`.
    """
    den_ok = np.abs(den) >= tol
    safe = np.where(den_ok, den, 1.0)
    fallback = np.where(np.abs(num) < tol, 0.0, np.nan)
    return np.where(den_ok, num / safe, fallback)


def _closed_ingredients(tau, temp, r, phi_sq, mu, alpha, phi):
    """Common element combinations entering the closed forms."""
    p = state_parts(tau, temp, r, phi_sq, alpha, phi)
    mu = np.asarray(mu, dtype=float)
    mub = 1.0 - mu
    r11 = mub * p.r11u + mu * p.r11c
    r44 = mub * p.r44u + mu * p.r44c
    r22 = mub * p.r22u
    r14 = mub * p.r14u + mu * p.r14c
    abs41sq = (r14 * np.conj(r14)).real
    coh = abs41sq >= COHERENCE_TOL**2
    safe14 = np.where(coh, r14, 1.0)
    # log-derivatives of the coherence; conjugation-invariant combinations
    # of rho41 equal those of rho14
    a_phi = np.where(coh, (mub * p.d14u + mu * p.d14c) / safe14, 0.0)
    a_mu = np.where(coh, p.dmu14 / safe14, 0.0)
    outer_den = (r11 + r44) * (r11 * r44 - abs41sq)
    return p, mub, r11, r44, r22, abs41sq, coh, a_phi, a_mu, outer_den


def closed_f_phi_grid(tau, temp, r, phi_sq, mu, alpha, phi):
    """Closed-form phase information, batched; NaN marks undefined points."""
    (p, mub, r11, r44, r22, abs41sq, coh, a_phi, _,
     outer_den) = _closed_ingredients(tau, temp, r, phi_sq, mu, alpha, phi)
    g0, _, _, _ = _g_terms_arrays(tau, temp, r, phi_sq, mu, alpha, phi)
    c2 = np.cos(2.0 * np.asarray(phi_sq, float) - 2.0 * np.asarray(phi, float))
    k = _limit_div(2.0 * r22 * g0 * (1.0 - c2), 2.0 * r22**2 - g0 * (1.0 + c2))
    num = 4.0 * abs41sq * ((r11 * r44 - abs41sq) * np.abs(a_phi) ** 2
                           + abs41sq * a_phi.real**2)
    return k + np.where(coh, _limit_div(num, outer_den), 0.0)


def closed_f_mu_grid(tau, temp, r, phi_sq, mu, alpha, phi):
    """Closed-form correlation-factor information, batched.

    At ``mu == 1`` the expression is evaluated by continuity slightly
    inside the domain; the spectral route is authoritative there.
    """
    mu = np.minimum(np.asarray(mu, dtype=float), 1.0 - MU_ONE_SHIFT)
    (p, mub, r11, r44, r22, abs41sq, coh, _, a_mu,
     outer_den) = _closed_ingredients(tau, temp, r, phi_sq, mu, alpha, phi)
    term1 = 2.0 * p.r22u / mub
    bracket = ((r11 * r44 - abs41sq) * np.abs(a_mu) ** 2
               + abs41sq * a_mu.real**2)
    num = ((r11 + r44) ** 2 * p.r22u**2
           + 4.0 * abs41sq * bracket
           - np.where(coh, 4.0 * abs41sq * (r11 + r44) * p.r22u * a_mu.real, 0.0))
    return term1 + _limit_div(num, outer_den)


def closed_f_muphi_grid(tau, temp, r, phi_sq, mu, alpha, phi):
    """Closed-form off-diagonal information element, batched."""
    (p, mub, r11, r44, r22, abs41sq, coh, a_phi, a_mu,
     outer_den) = _closed_ingredients(tau, temp, r, phi_sq, mu, alpha, phi)
    num = abs41sq * (4.0 * (r11 * r44 - abs41sq) * (a_phi * np.conj(a_mu)).real
                     + 4.0 * abs41sq * a_phi.real * a_mu.real
                     - 2.0 * (r11 + r44) * p.r22u * a_phi.real)
    return np.where(coh, _limit_div(num, outer_den), 0.0)


def _as_scalar(value, what: str) -> float:
    value = float(value)
    if not np.isfinite(value):
        raise NumericError(f"{what} is not finite at this parameter point")
    return value


def closed_form_f_phi(config: PhysicalConfig) -> float:
    """Phase QFI from the analytic X-state expressions (requires tau > 0)."""
    return _as_scalar(
        closed_f_phi_grid(config.tau, config.temp, config.r, config.phi_sq,
                          config.mu, config.alpha, config.phi),
        "closed-form f_phi")


def closed_form_f_mu(config: PhysicalConfig) -> float:
    """Correlation-factor QFI from the analytic X-state expressions."""
    return _as_scalar(
        closed_f_mu_grid(config.tau, config.temp, config.r, config.phi_sq,
                         config.mu, config.alpha, config.phi),
        "closed-form f_mu")


def closed_form_f_muphi(config: PhysicalConfig) -> float:
    """Off-diagonal QFIM element from the analytic X-state expressions."""
    return _as_scalar(
        closed_f_muphi_grid(config.tau, config.temp, config.r, config.phi_sq,
                            config.mu, config.alpha, config.phi),
        "closed-form f_muphi")


def qfim(config: PhysicalConfig, method: str = "spectral") -> Qfim2:
    """Assemble the 2x2 information matrix over (phi, mu).

    ``method="spectral"`` works everywhere, including ``tau == 0`` and
    ``mu == 1``; ``method="closed"`` uses the X-state closed forms and
    raises :class:`NumericError` where they are undefined.
    """
    if method == "spectral":
        f_phi, f_mu, f_muphi = spectral_qfim_grid(
            config.tau, config.temp, config.r, config.phi_sq,
            config.mu, config.alpha, config.phi)
        return Qfim2(float(f_phi), float(f_mu), float(f_muphi))
    if method == "closed":
        return Qfim2(closed_form_f_phi(config), closed_form_f_mu(config),
                     closed_form_f_muphi(config))
    raise ValueError(f"unknown method {method!r}")
