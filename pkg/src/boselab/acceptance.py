"""Acceptance suite: every headline number this package must reproduce.

Each criterion is a standalone function returning a ``CriterionResult`` with
the measured value, the target, the tolerance actually enforced and any data
worth plotting.  The pytest acceptance module asserts these results and the
``reproduce`` CLI subcommand renders them as a pass/fail table with figures.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import asymptotics, bogoliubov, liebliniger, scattering
from .asymptotics import DiluteInputs, HigherOrderConstants
from .potentials import Gaussian, HardCore, SoftSphere, Tabulated

LHY = asymptotics.LHY_COEFFICIENT
TONKS = asymptotics.TONKS_COEFFICIENT
DEPLETION_COEFFICIENT = 8.0 / (3.0 * math.sqrt(math.pi))


@dataclass
class CriterionResult:
    name: str
    passed: bool
    measured: float
    target: float
    tolerance: str
    runtime: float = 0.0
    notes: str = ""
    data: dict = field(default_factory=dict)

    def row(self) -> dict:
        return {
            "criterion": self.name,
            "status": "PASS" if self.passed else "FAIL",
            "measured": self.measured,
            "target": self.target,
            "tolerance": self.tolerance,
            "runtime_s": round(self.runtime, 3),
            "notes": self.notes,
        }


def _soft_sphere_a(v0: float, radius: float) -> float:
    kappa = math.sqrt(v0 / 2.0)
    return radius * (1.0 - math.tanh(kappa * radius) / (kappa * radius))


def scattering_oracles() -> CriterionResult:
    """Hard-core a = R exactly; soft-sphere march against the closed form."""
    t0 = time.perf_counter()
    hc_err = 0.0
    for radius in (0.35, 1.0, 2.5):
        for dim in (1, 2, 3):
            sol = scattering.solve(HardCore(radius), dim)
            hc_err = max(hc_err, abs(sol.a - radius))
    ss_err = 0.0
    cases = {}
    for v0, radius in ((1.0, 1.0), (10.0, 1.0), (100.0, 0.5)):
        sol = scattering.solve(SoftSphere(v0, radius), 3)
        exact = _soft_sphere_a(v0, radius)
        rel = abs(sol.a / exact - 1.0)
        cases[f"soft_sphere({v0:g},{radius:g})"] = rel
        ss_err = max(ss_err, rel)
    runtime = time.perf_counter() - t0
    passed = hc_err <= 1e-12 and ss_err <= 1e-8 and runtime < 1.0
    return CriterionResult(
        name="scattering length oracles",
        passed=passed,
        measured=ss_err,
        target=0.0,
        tolerance="hard-core |a-R| <= 1e-12; soft-sphere rel <= 1e-8; runtime < 1 s",
        runtime=runtime,
        notes=f"hard-core max |a-R| = {hc_err:.2e}",
        data={"cases": cases},
    )


def _identity_tabulated() -> Tabulated:
    return Tabulated([0.2, 0.5, 0.8, 1.0, 1.3], [6.0, 4.0, 2.5, 1.0, 0.2])


def scattering_identity() -> CriterionResult:
    """8 pi a = 4 pi int r^2 v u dr to 1e-6, and 8 pi a <= int v on random soft potentials."""
    t0 = time.perf_counter()
    named = {
        "soft_sphere(10,1)": SoftSphere(10.0, 1.0),
        "gaussian(5,0.5)": Gaussian(5.0, 0.5),
        "tabulated": _identity_tabulated(),
    }
    gaps = {}
    for label, pot in named.items():
        sol = scattering.solve(pot, 3)
        gaps[label] = scattering.check_identity_8pia(sol, pot).relative_gap
    worst_gap = max(gaps.values())

    rng = np.random.default_rng(20260808)
    inequality_ok = True
    margin = math.inf
    for _ in range(20):
        kind = rng.integers(0, 3)
        if kind == 0:
            pot = SoftSphere(float(rng.uniform(0.5, 50.0)), float(rng.uniform(0.3, 2.0)))
        elif kind == 1:
            pot = Gaussian(float(rng.uniform(0.5, 20.0)), float(rng.uniform(0.2, 1.0)))
        else:
            n = int(rng.integers(5, 12))
            radii = np.sort(rng.uniform(0.05, 2.0, n))
            radii += np.arange(n) * 1e-6  # guard against ties
            pot = Tabulated(radii, rng.uniform(0.0, 10.0, n))
        a = scattering.solve(pot, 3).a
        total = pot.integral(3)
        inequality_ok &= 8.0 * math.pi * a <= total * (1.0 + 1e-10)
        margin = min(margin, total - 8.0 * math.pi * a)
    runtime = time.perf_counter() - t0
    passed = worst_gap <= 1e-6 and inequality_ok
    return CriterionResult(
        name="8 pi a identity and inequality",
        passed=passed,
        measured=worst_gap,
        target=0.0,
        tolerance="relative gap <= 1e-6; 8 pi a <= int v on 20 random potentials",
        runtime=runtime,
        notes=f"min(int v - 8 pi a) = {margin:.3e} over randomized suite",
        data={"gaps": gaps},
    )


def lhy_slope_constant_mode() -> CriterionResult:
    """Slope of e/(4 pi rho^2 a) - 1 vs sqrt(rho a^3) in substitution mode."""
    t0 = time.perf_counter()
    mode = bogoliubov.ScatteringConstant(a=1.0)
    xs = np.logspace(-8.0, -5.0, 6)
    points = bogoliubov.lhy_sweep(mode, xs)
    fit = bogoliubov.fit_sqrt_slope(points)
    rel = abs(fit.slope / LHY - 1.0)
    runtime = time.perf_counter() - t0
    return CriterionResult(
        name="sqrt-diluteness slope, substitution mode",
        passed=rel <= 0.02 and runtime < 300.0,
        measured=fit.slope,
        target=LHY,
        tolerance="within 2% of 128/(15 sqrt(pi)) = 4.8144; runtime < 5 min",
        runtime=runtime,
        notes=f"relative deviation {rel:.3%}",
        data={"points": [pt.__dict__ for pt in points],
              "fit": {"slope": fit.slope, "intercept": fit.intercept}},
    )


def bogoliubov_negative_result() -> CriterionResult:
    """Full-potential minimization must NOT reproduce the universal slope."""
    t0 = time.perf_counter()
    pot = SoftSphere(10.0, 1.0)
    mode = bogoliubov.FullPotential(pot)
    a_eff = bogoliubov.effective_scattering_length(mode)
    ratio = pot.integral(3) / (8.0 * math.pi * a_eff)
    xs = np.logspace(-8.0, -5.0, 6)
    points = bogoliubov.lhy_sweep(mode, xs)
    fit = bogoliubov.fit_sqrt_slope(points)
    rel = abs(fit.slope / LHY - 1.0)
    runtime = time.perf_counter() - t0
    return CriterionResult(
        name="full-potential slope mismatch (negative result)",
        passed=rel > 0.05 and ratio >= 2.0,
        measured=fit.slope,
        target=LHY,
        tolerance="deviation > 5% required (threshold is artifact-level, not a literature value)",
        runtime=runtime,
        notes=f"vhat(0)/(8 pi a) = {ratio:.2f}; deviation {rel:.1%}",
        data={"points": [pt.__dict__ for pt in points],
              "fit": {"slope": fit.slope, "intercept": fit.intercept},
              "a_eff": a_eff},
    )


def alpha_theory_identity() -> CriterionResult:
    """Simplified pairing theory reproduces 4 pi rho^2 a and alpha = -rho omega."""
    t0 = time.perf_counter()
    rho = 1e-3
    sol = bogoliubov.solve_alpha_equation(SoftSphere(10.0, 1.0), rho)
    energy_rel = abs(sol.energy / (4.0 * math.pi * rho**2 * sol.a) - 1.0)
    runtime = time.perf_counter() - t0
    worst = max(energy_rel, sol.max_mismatch)
    return CriterionResult(
        name="alpha-equation leading-order identity",
        passed=energy_rel <= 1e-6 and sol.max_mismatch <= 1e-6,
        measured=worst,
        target=0.0,
        tolerance="energy/(4 pi rho^2 a) - 1 and max|alpha + rho omega|/rho <= 1e-6",
        runtime=runtime,
        notes=f"energy rel {energy_rel:.2e}, profile mismatch {sol.max_mismatch:.2e}",
    )


def lieb_liniger_strong_coupling() -> CriterionResult:
    """Exact e_tilde against (pi^2/3)(1 + 2/gamma)^-2 plus self-convergence."""
    t0 = time.perf_counter()
    devs = {}
    for gamma, tol in ((100.0, 1e-3), (1000.0, 1e-5)):
        sol = liebliniger.solve(gamma)
        closed = TONKS / (1.0 + 2.0 / gamma) ** 2
        devs[gamma] = (abs(sol.e_tilde - closed) / TONKS, tol)
    base = liebliniger.solve(100.0, liebliniger.QuadSpec(nodes=128))
    fine = liebliniger.solve(100.0, liebliniger.QuadSpec(nodes=256))
    shift = abs(fine.e_tilde / base.e_tilde - 1.0)
    gap_rows = []
    for roc in (1e-2, 1e-3):
        cmp_ = liebliniger.dilute_comparison(1.0, 1.0 / roc)
        gap_rows.append({"rho_over_c": roc, "gap": cmp_.gap,
                         "gap_over_rho_over_c": cmp_.gap / roc})
    runtime = time.perf_counter() - t0
    passed = all(d <= tol for d, tol in devs.values()) and shift <= 1e-8
    passed &= gap_rows[1]["gap_over_rho_over_c"] < gap_rows[0]["gap_over_rho_over_c"]
    return CriterionResult(
        name="Lieb-Liniger strong coupling",
        passed=passed,
        measured=devs[100.0][0],
        target=0.0,
        tolerance="dev <= 1e-3 at gamma=100, <= 1e-5 at gamma=1000; node-doubling <= 1e-8",
        runtime=runtime,
        notes=(f"dev(1000) = {devs[1000.0][0]:.2e}; node-doubling shift {shift:.2e}; "
               f"gap/(rho/c) falls {gap_rows[0]['gap_over_rho_over_c']:.2e} -> "
               f"{gap_rows[1]['gap_over_rho_over_c']:.2e}"),
        data={"gap_decay": gap_rows},
    )


def hardcore_1d_consistency() -> CriterionResult:
    """Exact 1D hard-core energy against the two-term expansion at rho a = 1e-3."""
    t0 = time.perf_counter()
    rho, a = 1.0, 1e-3
    exact = asymptotics.e1d_hardcore_exact(rho, a)
    series = asymptotics.e1d(DiluteInputs(rho=rho, a=a, dim=1))
    gap = abs(exact - series) / (TONKS * rho**3)
    bound = 10.0 * (rho * a) ** 2
    runtime = time.perf_counter() - t0
    return CriterionResult(
        name="1D hard-core expansion consistency",
        passed=gap <= bound,
        measured=gap,
        target=0.0,
        tolerance=f"gap <= 10 (rho a)^2 = {bound:.1e} at rho a = 1e-3",
        runtime=runtime,
    )


def mode_count_reproduction() -> CriterionResult:
    """Transversal mode count for the box-trap benchmark inputs."""
    t0 = time.perf_counter()
    est = asymptotics.physical_estimates(rho=2.0, a=5e-3, r_trap=35.0, l_box=70.0)
    runtime = time.perf_counter() - t0
    return CriterionResult(
        name="mode-count estimate",
        passed=38.0 <= est.mode_count <= 39.0,
        measured=est.mode_count,
        target=38.0,
        tolerance="pi rho a R^2 in [38, 39]",
        runtime=runtime,
        notes=f"full precision {est.mode_count:.4f}, displayed alongside the rounded ~{est.mode_count_rounded}",
        data={"estimates": est.__dict__},
    )


def _depletion_oracle(rho_a3: float) -> float:
    """Continuum depletion fraction by dense quadrature of the closed profile.

    Independent of the package's momentum-grid machinery: plain trapezoid on
    a linear grid of the dimensionless profile, plus the analytic tail.
    """
    x = np.linspace(1e-9, 400.0, 2_000_001)
    e_disp = x * np.sqrt(x * x + 2.0)
    profile = 0.5 * ((x * x + 1.0) / e_disp - 1.0)
    integral = float(np.trapezoid(x * x * profile, x)) + 1.0 / (4.0 * 400.0)
    c = 8.0 * math.pi * rho_a3  # units a = 1, rho0 ~ rho at oracle accuracy
    return c**1.5 * integral / (2.0 * math.pi**2) / rho_a3


def depletion_property() -> CriterionResult:
    """Depletion shrinks with diluteness and matches the continuum oracle."""
    t0 = time.perf_counter()
    mode = bogoliubov.ScatteringConstant(a=1.0)
    fractions = {}
    for x in (1e-8, 1e-6, 1e-5):
        state, _, _ = bogoliubov.minimize(x, mode)
        fractions[x] = bogoliubov.depletion(state).fraction
    oracle = _depletion_oracle(1e-6)
    closed = DEPLETION_COEFFICIENT * math.sqrt(1e-6)
    if abs(oracle / closed - 1.0) > 1e-2:
        raise AssertionError("depletion oracle disagrees with its closed form")
    rel = abs(fractions[1e-6] / oracle - 1.0)
    runtime = time.perf_counter() - t0
    return CriterionResult(
        name="condensate depletion property",
        passed=fractions[1e-8] < fractions[1e-5] and rel <= 0.10,
        measured=fractions[1e-6],
        target=oracle,
        tolerance="fraction(1e-8) < fraction(1e-5); oracle match within 10% at 1e-6",
        runtime=runtime,
        notes=f"fractions {fractions[1e-8]:.3e} < {fractions[1e-5]:.3e}; oracle rel {rel:.2%}",
        data={"fractions": {f"{k:g}": v for k, v in fractions.items()}},
    )


def dimensional_scaling() -> CriterionResult:
    """(rho, a) -> (s^-d rho, s a) rescales every evaluator by s^-(d+2).

    The dimensionful higher-order constants co-scale (D is a length^4, r_s a
    length); the dimensionless C and I are invariant.
    """
    t0 = time.perf_counter()
    rho0, a0 = 0.7, 0.13

    def consts(s: float) -> HigherOrderConstants:
        return HigherOrderConstants(D=0.3 * s**4, r_s=0.08 * s, C=1.7, I=1.1)

    def cases():
        yield 3, lambda r, a, s: asymptotics.e3d_lhy(DiluteInputs(r, a, 3))
        yield 3, lambda r, a, s: asymptotics.wu_expansion(DiluteInputs(r, a, 3), consts(s))
        yield 2, lambda r, a, s: asymptotics.e2d(DiluteInputs(r, a, 2))
        yield 2, lambda r, a, s: asymptotics.mora_castin(DiluteInputs(r, a, 2), consts(s))
        yield 1, lambda r, a, s: asymptotics.e1d(DiluteInputs(r, -a, 1))
        yield 1, lambda r, a, s: asymptotics.e1d_hardcore_exact(r, a)

    worst = 0.0
    for dim, evaluator in cases():
        base = evaluator(rho0 * 1e-4, a0, 1.0)  # dilute enough for every domain
        for s in (0.1, 2.0, 7.0):
            scaled = evaluator(rho0 * 1e-4 * s**-dim, a0 * s, s)
            worst = max(worst, abs(scaled * s ** (dim + 2) / base - 1.0))
    runtime = time.perf_counter() - t0
    return CriterionResult(
        name="dimensional-scaling covariance",
        passed=worst <= 1e-12,
        measured=worst,
        target=0.0,
        tolerance="relative deviation <= 1e-12 for s in {0.1, 2, 7}",
        runtime=runtime,
    )


CRITERIA = [
    scattering_oracles,
    scattering_identity,
    lhy_slope_constant_mode,
    bogoliubov_negative_result,
    alpha_theory_identity,
    lieb_liniger_strong_coupling,
    hardcore_1d_consistency,
    mode_count_reproduction,
    depletion_property,
    dimensional_scaling,
]


def run_all() -> list[CriterionResult]:
    """Run every acceptance criterion in order."""
    return [fn() for fn in CRITERIA]
