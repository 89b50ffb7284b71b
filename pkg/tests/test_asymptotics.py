"""Closed-form evaluators against direct-arithmetic oracles."""

import math

import numpy as np
import pytest

from boselab.asymptotics import (
    EULER_MASCHERONI,
    LHY_COEFFICIENT,
    TONKS_COEFFICIENT,
    WU_LOG_COEFFICIENT,
    DiluteInputs,
    HigherOrderConstants,
    e1d,
    e1d_hardcore_exact,
    e2d,
    e3d_lhy,
    mora_castin,
    physical_estimates,
    wu_expansion,
)
from boselab.errors import ValidationError


class TestLHY3D:
    def test_free_gas(self):
        assert e3d_lhy(DiluteInputs(1.0, 0.0, 3)) == 0.0

    def test_unit_inputs(self):
        # 4 pi (1 + 128/(15 sqrt(pi))) ~ 73.066
        expected = 4.0 * math.pi * (1.0 + 128.0 / (15.0 * math.sqrt(math.pi)))
        assert e3d_lhy(DiluteInputs(1.0, 1.0, 3)) == pytest.approx(expected, rel=1e-14)
        assert expected == pytest.approx(73.066, rel=1e-4)

    def test_correction_halves_when_diluteness_quarters(self):
        a = 1.0
        r1 = e3d_lhy(DiluteInputs(1e-6, a, 3)) / (4.0 * math.pi * 1e-12 * a) - 1.0
        r2 = e3d_lhy(DiluteInputs(0.25e-6, a, 3)) / (4.0 * math.pi * 0.25e-6**2 * a) - 1.0
        assert r2 == pytest.approx(0.5 * r1, rel=1e-12)

    def test_dim_guard(self):
        with pytest.raises(ValidationError):
            e3d_lhy(DiluteInputs(1.0, 1.0, 2))


class TestE2D:
    def test_free_gas_limit(self):
        assert e2d(DiluteInputs(1.0, 0.0, 2)) == 0.0

    def test_direct_arithmetic(self):
        rho, a = 1.0, 1e-5  # rho a^2 = 1e-10
        y = 1.0 / (10.0 * math.log(10.0))
        expected = 4.0 * math.pi * rho**2 * y * (
            1.0 + y * math.log(y * math.pi) + (2.0 * EULER_MASCHERONI + 0.5) * y
        )
        assert y == pytest.approx(0.0434294, rel=1e-5)
        assert e2d(DiluteInputs(rho, a, 2)) == pytest.approx(expected, rel=1e-14)

    def test_increasing_in_density(self):
        a = 1e-3
        rhos = np.linspace(1.0, 90.0, 25)  # rho a^2 spans (1e-6, ~1e-4)
        vals = [e2d(DiluteInputs(r, a, 2)) for r in rhos]
        assert all(x < y for x, y in zip(vals, vals[1:]))

    def test_dense_regime_rejected(self):
        with pytest.raises(ValidationError, match="not in dilute regime"):
            e2d(DiluteInputs(2.0, 1.0, 2))

    def test_negative_a_rejected_in_2d(self):
        with pytest.raises(ValidationError):
            DiluteInputs(1.0, -0.1, 2)


class TestMoraCastin:
    def test_reduces_to_shared_prefix(self):
        inputs = DiluteInputs(1.0, 1e-5, 2)
        y = 1.0 / abs(math.log(1e-10))
        diff = mora_castin(inputs, HigherOrderConstants(I=0.0)) - e2d(inputs)
        bound = 4.0 * math.pi * y**3 * (math.log(y * math.pi) + 2.0 * EULER_MASCHERONI + 1.0) ** 2
        assert diff == pytest.approx(bound, rel=1e-10)

    def test_ratio_tends_to_one(self):
        inputs = DiluteInputs(1.0, 1e-15, 2)  # rho a^2 = 1e-30
        assert mora_castin(inputs) / e2d(inputs) == pytest.approx(1.0, abs=5e-3)

    def test_direct_arithmetic_with_unit_constant(self):
        rho, a = 1.0, 1e-5
        y = 1.0 / (10.0 * math.log(10.0))
        lg = math.log(y * math.pi)
        expected = 4.0 * math.pi * y * (
            1.0 + y * (lg + 2.0 * EULER_MASCHERONI + 0.5)
            + y**2 * (lg + 2.0 * EULER_MASCHERONI + 1.0) ** 2
            - (8.0 / math.pi) * y**2
        )
        got = mora_castin(DiluteInputs(rho, a, 2), HigherOrderConstants(I=1.0))
        assert got == pytest.approx(expected, rel=1e-14)

    def test_difference_is_order_y_cubed(self):
        # (mora - e2d) / (4 pi rho^2 Y^3) stays bounded across the dilute window
        consts = HigherOrderConstants(I=1.0)
        worst = 0.0
        for exponent in range(-30, -9, 4):
            a = 10.0 ** (exponent / 2.0)
            inputs = DiluteInputs(1.0, a, 2)
            y = 1.0 / abs(math.log(inputs.rho * inputs.a**2))
            ratio = abs(mora_castin(inputs, consts) - e2d(inputs)) / (4.0 * math.pi * y**3)
            worst = max(worst, ratio)
        assert worst < 12.0


class TestE1D:
    def test_tonks_value(self):
        assert e1d(DiluteInputs(1.0, 0.0, 1)) == pytest.approx(math.pi**2 / 3.0, rel=1e-15)

    def test_negative_scattering_length(self):
        c = 5.0
        got = e1d(DiluteInputs(1.0, -2.0 / c, 1))
        assert got == pytest.approx((math.pi**2 / 3.0) * (1.0 - 4.0 / c), rel=1e-14)

    def test_direct_arithmetic(self):
        assert e1d(DiluteInputs(1.0, 0.1, 1)) == pytest.approx((math.pi**2 / 3.0) * 1.2, rel=1e-14)
        assert (math.pi**2 / 3.0) * 1.2 == pytest.approx(3.9478, rel=1e-4)


class TestHardCore1D:
    def test_free_limit(self):
        assert e1d_hardcore_exact(1.0, 0.0) == pytest.approx(math.pi**2 / 3.0, rel=1e-15)

    def test_half_packing(self):
        assert e1d_hardcore_exact(1.0, 0.5) == pytest.approx(4.0 * math.pi**2 / 3.0, rel=1e-14)

    def test_expansion_consistency(self):
        rho, a = 1.0, 1e-3
        gap = abs(e1d_hardcore_exact(rho, a) - e1d(DiluteInputs(rho, a, 1)))
        assert gap / (TONKS_COEFFICIENT * rho**3) <= 10.0 * (rho * a) ** 2

    def test_jammed_error(self):
        with pytest.raises(ValidationError, match="jammed"):
            e1d_hardcore_exact(2.0, 0.5)

    def test_convex_in_density(self):
        a = 1.0
        rhos = np.linspace(0.05, 0.9, 40)
        vals = np.array([e1d_hardcore_exact(r, a) for r in rhos])
        assert np.all(np.diff(vals, 2) >= 0.0)


class TestWu:
    def test_reduces_to_lhy(self):
        inputs = DiluteInputs(1e-12, 1.0, 3)
        assert wu_expansion(inputs) / e3d_lhy(inputs) == pytest.approx(1.0, abs=1e-9)

    def test_log_term_coefficient_is_exact(self):
        inputs = DiluteInputs(1e-6, 1.0, 3)
        x = 1e-6
        ratio = (wu_expansion(inputs) - e3d_lhy(inputs)) / (
            4.0 * math.pi * inputs.rho**2 * inputs.a * x * math.log(x))
        assert ratio == pytest.approx(WU_LOG_COEFFICIENT, rel=1e-9)

    def test_log_term_coefficient_deep_dilute(self):
        # at 1e-10 the subtraction is cancellation-limited; 1% is the target there
        inputs = DiluteInputs(1e-10, 1.0, 3)
        x = 1e-10
        ratio = (wu_expansion(inputs) - e3d_lhy(inputs)) / (
            4.0 * math.pi * inputs.rho**2 * inputs.a * x * math.log(x))
        assert ratio == pytest.approx(WU_LOG_COEFFICIENT, rel=1e-2)

    def test_hard_core_effective_range_combination(self):
        # r_s = 2a/3 makes the analytic coefficient pi r_s / a = 2 pi / 3
        rho, a, x = 1e-6, 1.0, 1e-6
        got = wu_expansion(DiluteInputs(rho, a, 3), HigherOrderConstants(r_s=2.0 / 3.0))
        base = wu_expansion(DiluteInputs(rho, a, 3))
        assert got - base == pytest.approx(
            4.0 * math.pi * rho**2 * a * (2.0 * math.pi / 3.0) * x, rel=1e-10)

    def test_direct_arithmetic(self):
        rho, a = 1e-6, 1.0
        x = 1e-6
        expected = 4.0 * math.pi * rho**2 * a * (
            1.0 + LHY_COEFFICIENT * math.sqrt(x)
            + WU_LOG_COEFFICIENT * x * math.log(x))
        assert wu_expansion(DiluteInputs(rho, a, 3)) == pytest.approx(expected, rel=1e-14)

    def test_requires_positive_a(self):
        with pytest.raises(ValidationError):
            wu_expansion(DiluteInputs(1.0, 0.0, 3))


class TestPhysicalEstimates:
    def test_benchmark_mode_count(self):
        est = physical_estimates(rho=2.0, a=5e-3, r_trap=35.0, l_box=70.0)
        assert est.mode_count == pytest.approx(math.pi * 2.0 * 5e-3 * 35.0**2, rel=1e-15)
        assert 38.0 <= est.mode_count <= 39.0
        assert est.mode_count_rounded == 38

    def test_unit_healing_length(self):
        assert physical_estimates(1.0, 1.0, 1.0, 1.0).healing_length == 1.0

    def test_depletion_bound_scales_with_box_squared(self):
        small = physical_estimates(2.0, 0.01, 10.0, 10.0).depletion_bound
        large = physical_estimates(2.0, 0.01, 10.0, 20.0).depletion_bound
        assert large == pytest.approx(4.0 * small, rel=1e-14)

    def test_positive_inputs_required(self):
        with pytest.raises(ValidationError):
            physical_estimates(0.0, 1.0, 1.0, 1.0)


class TestScalingCovariance:
    @pytest.mark.parametrize("s", [0.1, 2.0, 7.0])
    def test_lhy_scaling(self, s):
        rho, a = 3e-5, 0.2
        base = e3d_lhy(DiluteInputs(rho, a, 3))
        scaled = e3d_lhy(DiluteInputs(rho * s**-3, a * s, 3))
        assert scaled * s**5 == pytest.approx(base, rel=1e-12)

    @pytest.mark.parametrize("s", [0.1, 2.0, 7.0])
    def test_e2d_scaling(self, s):
        rho, a = 3e-5, 0.2
        base = e2d(DiluteInputs(rho, a, 2))
        scaled = e2d(DiluteInputs(rho * s**-2, a * s, 2))
        assert scaled * s**4 == pytest.approx(base, rel=1e-12)

    @pytest.mark.parametrize("s", [0.1, 2.0, 7.0])
    def test_e1d_scaling(self, s):
        rho, a = 3e-5, -0.2
        base = e1d(DiluteInputs(rho, a, 1))
        scaled = e1d(DiluteInputs(rho / s, a * s, 1))
        assert scaled * s**3 == pytest.approx(base, rel=1e-12)
