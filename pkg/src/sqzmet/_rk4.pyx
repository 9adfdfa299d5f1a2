# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled fixed-step RK4 propagation of the two reservoir channels.

The independent-channel and collective-channel master equations are both
linear with time-independent coefficients, so the generators are applied
as explicit 4x4 element updates.  Every jump operator involved has a
single nonzero entry per row, which turns each dissipator into a couple
of shifted block copies instead of general matrix products.
"""

import numpy as np

ctypedef double complex cplx

# number of ground-state / excited qubits per basis index |00>,|01>,|10>,|11>
cdef double G0[4]
cdef double E1[4]
G0[0] = 2.0; G0[1] = 1.0; G0[2] = 1.0; G0[3] = 0.0
E1[0] = 0.0; E1[1] = 1.0; E1[2] = 1.0; E1[3] = 2.0


cdef void _rhs_u(cplx rho[4][4], cplx out[4][4],
                 double big_n, cplx w, cplx wc) noexcept nogil:
    """Independent channel: each qubit couples to the reservoir on its own."""
    cdef int i, j, a, b
    cdef double np1 = big_n + 1.0
    for i in range(4):
        for j in range(4):
            out[i][j] = (-0.5 * big_n * (G0[i] + G0[j])
                         - 0.5 * np1 * (E1[i] + E1[j])) * rho[i][j]
    for a in range(2):
        for b in range(2):
            # heating, jump sigma_plus on qubit 1 then qubit 2
            out[2 + a][2 + b] += big_n * rho[a][b]
            out[2 * a + 1][2 * b + 1] += big_n * rho[2 * a][2 * b]
            # cooling, jump sigma_minus
            out[a][b] += np1 * rho[2 + a][2 + b]
            out[2 * a][2 * b] += np1 * rho[2 * a + 1][2 * b + 1]
            # anomalous two-photon terms, w = chi * exp(i Phi)
            out[2 + a][b] -= w * rho[a][2 + b]
            out[2 * a + 1][2 * b] -= w * rho[2 * a][2 * b + 1]
            out[a][2 + b] -= wc * rho[2 + a][b]
            out[2 * a][2 * b + 1] -= wc * rho[2 * a + 1][2 * b]


cdef void _rhs_c(cplx rho[4][4], cplx out[4][4],
                 double big_n, cplx w, cplx wc) noexcept nogil:
    """Collective channel: both qubits flip together."""
    cdef int i, j
    cdef double np1 = big_n + 1.0
    for i in range(4):
        for j in range(4):
            out[i][j] = (-0.5 * big_n * ((i == 0) + (j == 0))
                         - 0.5 * np1 * ((i == 3) + (j == 3))) * rho[i][j]
    out[3][3] += big_n * rho[0][0]
    out[0][0] += np1 * rho[3][3]
    out[3][0] -= w * rho[0][3]
    out[0][3] -= wc * rho[3][0]


cdef void _rk4_step(cplx rho[4][4], double h, bint collective,
                    double big_n, cplx w, cplx wc) noexcept nogil:
    cdef cplx k1[4][4]
    cdef cplx k2[4][4]
    cdef cplx k3[4][4]
    cdef cplx k4[4][4]
    cdef cplx tmp[4][4]
    cdef int i, j
    cdef double h2 = 0.5 * h
    cdef double h6 = h / 6.0

    if collective:
        _rhs_c(rho, k1, big_n, w, wc)
    else:
        _rhs_u(rho, k1, big_n, w, wc)
    for i in range(4):
        for j in range(4):
            tmp[i][j] = rho[i][j] + h2 * k1[i][j]
    if collective:
        _rhs_c(tmp, k2, big_n, w, wc)
    else:
        _rhs_u(tmp, k2, big_n, w, wc)
    for i in range(4):
        for j in range(4):
            tmp[i][j] = rho[i][j] + h2 * k2[i][j]
    if collective:
        _rhs_c(tmp, k3, big_n, w, wc)
    else:
        _rhs_u(tmp, k3, big_n, w, wc)
    for i in range(4):
        for j in range(4):
            tmp[i][j] = rho[i][j] + h * k3[i][j]
    if collective:
        _rhs_c(tmp, k4, big_n, w, wc)
    else:
        _rhs_u(tmp, k4, big_n, w, wc)
    for i in range(4):
        for j in range(4):
            rho[i][j] += h6 * (k1[i][j] + 2.0 * k2[i][j]
                               + 2.0 * k3[i][j] + k4[i][j])


BACKEND = "cython"


def propagate(rho_u, rho_c, long n_full, double h, double rem,
              double big_n, double chi, double phi_sq):
    """Advance both channel states by n_full steps of h plus one of rem.

    Parameters are the effective photon number, the squeezing parameter
    and the squeezing phase; the states are 4x4 complex arrays (copied,
    not mutated).  Returns the propagated pair.
    """
    u = np.array(rho_u, dtype=np.complex128, order="C", copy=True)
    c = np.array(rho_c, dtype=np.complex128, order="C", copy=True)
    cdef cplx[:, ::1] uv = u
    cdef cplx[:, ::1] cv = c
    cdef cplx bu[4][4]
    cdef cplx bc[4][4]
    cdef cplx w = chi * (np.cos(phi_sq) + 1j * np.sin(phi_sq))
    cdef cplx wc = w.real - 1j * w.imag
    cdef long k
    cdef int i, j

    for i in range(4):
        for j in range(4):
            bu[i][j] = uv[i, j]
            bc[i][j] = cv[i, j]
    with nogil:
        for k in range(n_full):
            _rk4_step(bu, h, 0, big_n, w, wc)
            _rk4_step(bc, h, 1, big_n, w, wc)
        if rem > 0.0:
            _rk4_step(bu, rem, 0, big_n, w, wc)
            _rk4_step(bc, rem, 1, big_n, w, wc)
    for i in range(4):
        for j in range(4):
            uv[i, j] = bu[i][j]
            cv[i, j] = bc[i][j]
    return u, c
