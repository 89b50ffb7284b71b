"""Exact 1D delta gas: integral equation solver and dilute cross-checks."""

import math

import numpy as np
import pytest

from boselab.errors import ValidationError
from boselab.liebliniger import (
    TONKS_ENERGY,
    DiluteComparison,
    QuadSpec,
    dilute_comparison,
    energy_density,
    solve,
)


def strong_coupling_closed_form(gamma):
    return TONKS_ENERGY / (1.0 + 2.0 / gamma) ** 2


class TestSolve:
    def test_strong_coupling_two_term(self):
        # at gamma = 1e5 the expansion (pi^2/3)(1 - 4/gamma) holds to ~1e-9
        sol = solve(1e5)
        expected = TONKS_ENERGY * (1.0 - 4.0 / 1e5)
        assert abs(sol.e_tilde - expected) / expected <= 1e-3

    @pytest.mark.parametrize("gamma,tol", [(100.0, 1e-3), (1000.0, 1e-5)])
    def test_closed_form_resummation(self, gamma, tol):
        sol = solve(gamma)
        assert abs(sol.e_tilde - strong_coupling_closed_form(gamma)) / TONKS_ENERGY <= tol

    def test_dense_grid_self_convergence(self):
        # independent oracle: the same equations on a four-times finer rule
        base = solve(10.0, QuadSpec(nodes=128))
        dense = solve(10.0, QuadSpec(nodes=512))
        assert abs(base.e_tilde / dense.e_tilde - 1.0) <= 1e-8

    def test_node_doubling_shift(self):
        base = solve(100.0, QuadSpec(nodes=128))
        fine = solve(100.0, QuadSpec(nodes=256))
        assert abs(base.e_tilde / fine.e_tilde - 1.0) <= 1e-8

    def test_density_is_positive_and_even(self):
        sol = solve(2.0)
        assert np.all(sol.g > 0.0)
        assert np.max(np.abs(sol.g - sol.g[::-1])) <= 1e-12

    def test_residual_tolerance(self):
        for gamma in (0.1, 1.0, 50.0, 1e4):
            assert solve(gamma).residual <= 1e-9

    def test_bounded_by_tonks_and_monotone(self):
        gammas = np.logspace(-1, 5, 19)
        values = [solve(g).e_tilde for g in gammas]
        assert all(v < TONKS_ENERGY for v in values)
        assert all(x < y for x, y in zip(values, values[1:]))

    def test_invalid_gamma(self):
        with pytest.raises(ValidationError):
            solve(0.0)
        with pytest.raises(ValidationError):
            solve(-2.0)


class TestEnergyDensity:
    def test_tonks_limit(self):
        # c/rho = 1e6 sits within 1e-4 of the free-fermion value
        assert energy_density(1.0, 1e6) == pytest.approx(TONKS_ENERGY, rel=1e-4)

    def test_matches_closed_form_at_gamma_100(self):
        assert energy_density(1.0, 100.0) == pytest.approx(
            strong_coupling_closed_form(100.0), rel=1e-3)

    @pytest.mark.parametrize("s", [0.5, 2.0, 3.0])
    def test_scaling(self, s):
        base = energy_density(1.0, 50.0)
        assert energy_density(s, 50.0 * s) == pytest.approx(s**3 * base, rel=1e-12)

    def test_convex_in_density(self):
        c = 40.0
        rhos = np.linspace(0.5, 3.5, 9)
        vals = np.array([energy_density(r, c) for r in rhos])
        assert np.all(np.diff(vals, 2) >= -1e-12 * vals.max())

    def test_validation(self):
        with pytest.raises(ValidationError):
            energy_density(-1.0, 10.0)
        with pytest.raises(ValidationError):
            energy_density(1.0, 0.0)


class TestDiluteComparison:
    def test_gap_matches_strong_coupling_series(self):
        # next expansion order gives gap ~ 12 (rho/c)^2
        cmp_ = dilute_comparison(1.0, 100.0)
        assert cmp_.gap == pytest.approx(12.0 * 1e-4, rel=0.10)

    def test_gap_decays_faster_than_rho_over_c(self):
        g2 = dilute_comparison(1.0, 100.0).gap
        g3 = dilute_comparison(1.0, 1000.0).gap
        assert g3 * 10.0 <= g2

    def test_theorem_value_is_two_term_formula(self):
        cmp_ = dilute_comparison(2.0, 400.0)
        a = -2.0 / 400.0
        assert cmp_.theorem1 == pytest.approx(
            TONKS_ENERGY * 8.0 * (1.0 + 2.0 * 2.0 * a), rel=1e-14)

    def test_not_dilute_guard(self):
        with pytest.raises(ValidationError, match="not dilute"):
            dilute_comparison(1.0, 5.0)
