import math

import numpy as np
import pytest

from sqzmet.core import PhysicalConfig
from sqzmet.errors import SingularQfimError
from sqzmet.metrics import improvements, variance_bounds
from sqzmet.qfi import Qfim2, qfim

from conftest import random_config

SQ2 = math.sqrt(2) / 2


class TestVarianceBounds:
    def test_diagonal_information(self):
        m = variance_bounds(Qfim2(1.0, 1.0, 0.0))
        assert m.delta_ind == pytest.approx(2.0)
        assert m.delta_sim == pytest.approx(1.0)
        assert m.ratio_r == pytest.approx(2.0)

    def test_singular_matrix_rejected(self):
        with pytest.raises(SingularQfimError):
            variance_bounds(Qfim2(1.0, 1.0, 1.0))
        with pytest.raises(SingularQfimError):
            variance_bounds(Qfim2(0.0, 1.0, 0.0))

    def test_correlated_information(self):
        # direct arithmetic: delta_ind = 1/4 + 1 = 1.25,
        # delta_sim = (5/2)/(4 - 1) = 5/6, ratio = 1.5
        m = variance_bounds(Qfim2(4.0, 1.0, 1.0))
        assert m.delta_ind == pytest.approx(1.25)
        assert m.delta_sim == pytest.approx(5.0 / 6.0)
        assert m.ratio_r == pytest.approx(1.5)

    def test_ratio_identity_and_bound(self, rng):
        for _ in range(100):
            f_phi = float(rng.uniform(0.01, 10.0))
            f_mu = float(rng.uniform(0.01, 10.0))
            lim = math.sqrt(f_phi * f_mu)
            f_muphi = float(rng.uniform(-0.99, 0.99)) * lim
            m = variance_bounds(Qfim2(f_phi, f_mu, f_muphi))
            assert m.ratio_r <= 2.0 + 1e-9
            expected = 2.0 * (f_mu * f_phi - f_muphi**2) / (f_mu * f_phi)
            assert m.ratio_r == pytest.approx(expected, rel=1e-12)
            # inverse-matrix diagonal dominance for a 2x2 PSD matrix
            assert m.delta_sim >= 0.5 * max(1 / f_phi, 1 / f_mu) - 1e-12

    def test_scale_consistency(self, rng):
        q = Qfim2(3.0, 0.7, 0.4)
        m = variance_bounds(q)
        for c in (0.1, 2.0, 117.0):
            qc = Qfim2(c * q.f_phi, c * q.f_mu, c * q.f_muphi)
            mc = variance_bounds(qc)
            assert mc.delta_ind == pytest.approx(m.delta_ind / c, rel=1e-12)
            assert mc.delta_sim == pytest.approx(m.delta_sim / c, rel=1e-12)
            assert mc.ratio_r == pytest.approx(m.ratio_r, rel=1e-12)

    def test_computed_information_ratio_bounded(self, rng):
        for _ in range(40):
            cfg = random_config(rng, tau_range=(0.2, 4.0))
            try:
                m = variance_bounds(qfim(cfg, method="spectral"))
            except SingularQfimError:
                continue
            assert m.ratio_r <= 2.0 + 1e-9
            assert m.delta_sim > 0.0


class TestImprovements:
    def test_self_difference_is_zero(self):
        cfg = PhysicalConfig(1.0, 0.3, 0.0, 0.5, 0.4, SQ2, 0.9)
        assert improvements(cfg) == (0.0, 0.0)

    def test_phase_matching_sign_structure(self):
        # matched squeezing phase helps, anti-matched hurts (strong
        # correlation regime: condition on Phi - 2 phi)
        phi = math.pi / 2
        base = PhysicalConfig(1.0, 0.3, 1.0, 0.0, 0.9, SQ2, phi)
        matched = base.replace(phi_sq=(2 * phi + math.pi) % (2 * math.pi))
        anti = base.replace(phi_sq=2 * phi % (2 * math.pi))
        assert improvements(matched)[0] > 0.0
        assert improvements(anti)[0] < 0.0

    def test_mu_improvement_positive_on_grid(self):
        # correlation-factor information gains from squeezing even off
        # the matched phase
        for phi in np.linspace(0, 2 * math.pi, 7):
            for mu in (0.1, 0.5, 0.9):
                cfg = PhysicalConfig(1.0, 1.0, 1.0, math.pi, float(mu),
                                     SQ2, float(phi))
                assert improvements(cfg)[1] >= -1e-9

    def test_methods_agree(self, rng):
        cfg = random_config(rng).replace(mu=0.6)
        a = improvements(cfg, method="spectral")
        b = improvements(cfg, method="closed")
        assert a[0] == pytest.approx(b[0], rel=1e-7, abs=1e-10)
        assert a[1] == pytest.approx(b[1], rel=1e-7, abs=1e-10)
