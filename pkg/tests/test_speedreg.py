"""Tests for the tanh-type speed-regulating function."""

import math

import pytest

from lbsctrl import phi, phi_deriv, phi_lower_bound_check

E3 = math.exp(3.0)
E8 = math.exp(8.0)


class TestPhi:
    def test_zero_at_origin(self):
        assert phi(0.0, E3) == 0.0

    def test_saturates_to_one(self):
        assert phi(100.0 * E3, E3) == pytest.approx(1.0, abs=1e-12)

    def test_inverse_identity(self):
        mu = 2.7
        assert phi(mu * math.atanh(0.5), mu) == pytest.approx(0.5, abs=1e-15)

    def test_range(self):
        for k in range(200):
            v = phi(0.37 * k, 1.9)
            assert 0.0 <= v < 1.0 or v == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize("mu", [0.1, 1.0, E3, E8])
    def test_strictly_increasing(self, mu):
        # strict ordering is numerically meaningful until tanh saturates
        # near t/mu ~ 18, so sample below that
        ts = [mu * 15.0 * k / 400.0 for k in range(401)]
        vals = [phi(t, mu) for t in ts]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_scale_law(self):
        # phi(t, mu) = phi(k t, k mu) for any k > 0
        for k in (1e-3, 0.5, 7.0, 1e4):
            for t in (0.0, 0.3, 2.0, 40.0):
                assert phi(t, 1.7) == pytest.approx(phi(k * t, k * 1.7), abs=1e-12)

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            phi(-0.1, 1.0)

    @pytest.mark.parametrize("mu", [0.0, -1.0, float("inf"), float("nan")])
    def test_bad_mu_rejected(self, mu):
        with pytest.raises(ValueError):
            phi(1.0, mu)


class TestPhiDeriv:
    def test_value_at_origin(self):
        # sech(0) = 1, so the slope at t=0 is exactly 1/mu
        assert phi_deriv(0.0, 4.0) == pytest.approx(0.25, abs=1e-15)

    def test_positive_everywhere(self):
        # sech^2 underflows to exact zero past t/mu ~ 373, so stay below
        for mu in (0.1, 1.0, E3):
            for k in range(100):
                assert phi_deriv(3.0 * k * mu, mu) > 0.0

    def test_matches_finite_difference(self):
        # central difference vs analytic form at 100 sample points
        h = 1e-6
        for mu in (0.5, 1.0, E3):
            for k in range(100):
                t = h + 0.11 * k * mu
                fd = (phi(t + h, mu) - phi(t - h, mu)) / (2.0 * h)
                assert phi_deriv(t, mu) == pytest.approx(fd, abs=1e-6)

    def test_bad_args_rejected(self):
        with pytest.raises(ValueError):
            phi_deriv(-1.0, 1.0)
        with pytest.raises(ValueError):
            phi_deriv(1.0, -1.0)


class TestLowerBound:
    def test_spot_value(self):
        # 1 * tanh(1) = 0.76159 >= 1 - 0.2785 = 0.7215
        assert phi_lower_bound_check(1.0, 1.0)

    def test_origin_always_true(self):
        for mu in (1e-2, 1.0, E8):
            assert phi_lower_bound_check(0.0, mu)

    @pytest.mark.parametrize("mu", [E3, E8, 0.1])
    def test_grid_sweep(self, mu):
        # t in {0, 0.01, ..., 50}: the bound t*phi >= t - 0.2785*mu holds
        assert all(phi_lower_bound_check(0.01 * k, mu) for k in range(5001))

    def test_dense_grid_over_mu_range(self):
        # log-spaced mu spanning [1e-2, e^9], 10^4 points each
        mus = [1e-2 * (100.0 * math.exp(9.0)) ** (i / 7.0) for i in range(8)]
        for mu in mus:
            upper = 60.0 * mu
            assert all(
                phi_lower_bound_check(upper * k / 9999.0, mu) for k in range(10000)
            )

    def test_bound_is_tight(self):
        # the constant 0.2785 cannot be shrunk much: with 0.27 the
        # inequality fails somewhere, which guards against a slack oracle
        mu = 1.0
        slack = [0.01 * k for k in range(5001)]
        assert any(t * phi(t, mu) < t - 0.27 * mu for t in slack)
