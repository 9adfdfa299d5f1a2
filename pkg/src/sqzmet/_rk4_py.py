"""Pure-Python propagation kernel, selected when the compiled one is absent.

Implements exactly the same right-hand sides and step schedule as the
compiled kernel, as plain matrix expressions on the 4x4 state.  Also the
home of the reference right-hand-side implementations used by the public
API and the tests.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

_SP = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)  # |1><0|
_SM = _SP.T.conj()
_I2 = np.eye(2, dtype=complex)

SP1 = np.kron(_SP, _I2)
SM1 = np.kron(_SM, _I2)
SP2 = np.kron(_I2, _SP)
SM2 = np.kron(_I2, _SM)
SPP = np.kron(_SP, _SP)
SMM = np.kron(_SM, _SM)

_NUM_GROUND = SM1 @ SP1 + SM2 @ SP2  # diag(2, 1, 1, 0)
_NUM_EXCITED = SP1 @ SM1 + SP2 @ SM2  # diag(0, 1, 1, 2)
_P00 = SMM @ SPP  # |00><00|
_P11 = SPP @ SMM  # |11><11|


def rhs_u(rho: np.ndarray, big_n: float, chi: float, phi_sq: float) -> np.ndarray:
    """Independent-channel generator applied to ``rho``."""
    w = chi * np.exp(1j * phi_sq)
    out = big_n * (SP1 @ rho @ SM1 + SP2 @ rho @ SM2)
    out += (big_n + 1.0) * (SM1 @ rho @ SP1 + SM2 @ rho @ SP2)
    out -= 0.5 * big_n * (_NUM_GROUND @ rho + rho @ _NUM_GROUND)
    out -= 0.5 * (big_n + 1.0) * (_NUM_EXCITED @ rho + rho @ _NUM_EXCITED)
    out -= w * (SP1 @ rho @ SP1 + SP2 @ rho @ SP2)
    out -= np.conj(w) * (SM1 @ rho @ SM1 + SM2 @ rho @ SM2)
    return out


def rhs_c(rho: np.ndarray, big_n: float, chi: float, phi_sq: float) -> np.ndarray:
    """Collective-channel generator applied to ``rho``."""
    w = chi * np.exp(1j * phi_sq)
    out = big_n * (SPP @ rho @ SMM)
    out += (big_n + 1.0) * (SMM @ rho @ SPP)
    out -= 0.5 * big_n * (_P00 @ rho + rho @ _P00)
    out -= 0.5 * (big_n + 1.0) * (_P11 @ rho + rho @ _P11)
    out -= w * (SPP @ rho @ SPP)
    out -= np.conj(w) * (SMM @ rho @ SMM)
    return out


def _rk4_step(rho, h, rhs, big_n, chi, phi_sq):
    k1 = rhs(rho, big_n, chi, phi_sq)
    k2 = rhs(rho + 0.5 * h * k1, big_n, chi, phi_sq)
    k3 = rhs(rho + 0.5 * h * k2, big_n, chi, phi_sq)
    k4 = rhs(rho + h * k3, big_n, chi, phi_sq)
    return rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def propagate(rho_u, rho_c, n_full: int, h: float, rem: float,
              big_n: float, chi: float, phi_sq: float):
    """Advance both channel states by ``n_full`` steps of ``h`` plus one of
    ``rem``; mirrors the compiled kernel's signature and schedule."""
    u = np.array(rho_u, dtype=complex, copy=True)
    c = np.array(rho_c, dtype=complex, copy=True)
    for _ in range(n_full):
        u = _rk4_step(u, h, rhs_u, big_n, chi, phi_sq)
        c = _rk4_step(c, h, rhs_c, big_n, chi, phi_sq)
    if rem > 0.0:
        u = _rk4_step(u, rem, rhs_u, big_n, chi, phi_sq)
        c = _rk4_step(c, rem, rhs_c, big_n, chi, phi_sq)
    return u, c
