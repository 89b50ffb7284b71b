"""Bogoliubov variational theory of the 3D gas on a radial momentum grid.

The energy density of a translation-invariant quasi-free state with condensate
density rho0, momentum distribution gamma(p) >= 0 and real pairing function
alpha(p) subject to alpha^2 <= gamma (1 + gamma) is

    E(rho0, gamma, alpha) = (2pi)^-3 int p^2 gamma dp
        + (1/2) vhat(0) (rho0 + (2pi)^-3 int gamma)^2
        + rho0 (2pi)^-3 int vhat(p) (gamma + alpha) dp
        + (1/2) (2pi)^-6 iint vhat(p-q) (gamma gamma' + alpha alpha') dp dq

in units hbar = 1, mass = 1/2 (kinetic energy p^2).  On a radial grid with
weights w_j for (2pi)^-3 int d^3p the double integral reduces to the angular
average of vhat over relative orientations,

    K(p, q) = (1/(2pq)) int_{|p-q|}^{p+q} k vhat(k) dk
            = (4pi/(pq)) int v(r) sin(pr) sin(qr) dr,

which is symmetric, reduces to vhat(p) as q -> 0, and is identically 8 pi a
when vhat is the constant 8 pi a.

Interaction modes
-----------------
``FullPotential(v)``: the functional exactly as written, with the real
kernel.  ``minimize`` runs a damped self-consistent iteration of the per-mode
diagonalization gamma = sinh^2(beta), alpha = -sinh(beta) cosh(beta) (the
constraint-saturating minimizer form), with rho0 eliminated as
rho - sum w gamma; the reported gradient is the exact eliminated-rho0
gradient in beta and the reported energy is the literal functional value.

``ScatteringConstant(a)``: vhat replaced everywhere by the constant 8 pi a.
The literal constant-kernel functional is not cutoff-stable: a constant
interaction has vanishing scattering length once its own pairing channel is
resummed, so at any practical cutoff the true minimum collapses far below the
physical branch (its energy is bounded by the pure-condensate value and
cannot reproduce the known positive sqrt-diluteness correction).
``minimize`` therefore works with the standard regularized form of the
substituted theory: each mode carries the second-order compensation term
(8 pi a rho0)^2 / (4 p^2), which removes the double counting incurred by
using the scattering length itself as the coupling constant.  The stationary
state is the textbook diagonalization profile, the reported energy is
cutoff-stable, and ``evaluate_functional`` keeps evaluating the literal
functional for any state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np
from numpy.typing import NDArray

from . import scattering
from .errors import SolverError, ValidationError
from .potentials import Delta1D, HardCore, RadialPotential, simpson_grid

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class MomentumGrid:
    """Radial momentum nodes p_j > 0 with weights for (2pi)^-3 int d^3p."""

    p: NDArray
    w: NDArray

    def __post_init__(self) -> None:
        p = np.asarray(self.p, dtype=float)
        w = np.asarray(self.w, dtype=float)
        if p.ndim != 1 or p.shape != w.shape or p.size < 2:
            raise ValidationError("momentum grid needs matching 1D node/weight arrays")
        if p[0] <= 0 or np.any(np.diff(p) <= 0):
            raise ValidationError("momentum nodes must be positive and strictly increasing")
        if np.any(w <= 0):
            raise ValidationError("quadrature weights must be positive")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "w", w)

    @property
    def cutoff(self) -> float:
        return float(self.p[-1])

    @classmethod
    def logarithmic(cls, p_min: float, p_max: float, nodes: int) -> "MomentumGrid":
        """Log-spaced nodes with trapezoidal weights in log p:
        (2pi)^-3 int d^3p = (1/2pi^2) int p^3 dlog p."""
        if not (0 < p_min < p_max):
            raise ValidationError("need 0 < p_min < p_max")
        if nodes < 8:
            raise ValidationError("need at least 8 momentum nodes")
        lp = np.linspace(math.log(p_min), math.log(p_max), nodes)
        p = np.exp(lp)
        dl = lp[1] - lp[0]
        dlog = np.full(nodes, dl)
        dlog[0] = dlog[-1] = 0.5 * dl
        w = p**3 * dlog / (2.0 * math.pi**2)
        return cls(p=p, w=w)

    def integrate(self, values: NDArray) -> float:
        return float(self.w @ values)


@dataclass(frozen=True)
class GridSpec:
    """Momentum-grid request; None fields fall back to scale-aware defaults
    p_min = 1e-2 sqrt(rho a_eff) and cutoff = 50 / a_eff."""

    nodes: int = 400
    p_min: float | None = None
    cutoff: float | None = None

    def build(self, rho: float, a_eff: float) -> MomentumGrid:
        p_min = self.p_min if self.p_min is not None else 1e-2 * math.sqrt(rho * a_eff)
        cutoff = self.cutoff if self.cutoff is not None else 50.0 / a_eff
        return MomentumGrid.logarithmic(p_min, cutoff, self.nodes)


@dataclass(frozen=True)
class SolverSpec:
    """Self-consistent iteration controls for ``minimize``."""

    max_iter: int = 600
    mixing: float = 0.6
    grad_tol: float | None = None  # None: 1e-10 * 4 pi rho^2 a, floored at float64 noise


@dataclass(frozen=True)
class ScatteringConstant:
    """Interaction replaced everywhere by the constant vhat = 8 pi a."""

    a: float

    def __post_init__(self) -> None:
        if not (self.a > 0 and math.isfinite(self.a)):
            raise ValidationError("scattering-constant mode needs a > 0")


@dataclass(frozen=True)
class FullPotential:
    """Interaction given by a finite-range potential with a Fourier transform."""

    potential: RadialPotential

    def __post_init__(self) -> None:
        if isinstance(self.potential, HardCore):
            raise ValidationError("interaction has no Fourier transform (hard core)")
        if isinstance(self.potential, Delta1D):
            raise ValidationError("delta interaction is one-dimensional only")


InteractionMode = Union[ScatteringConstant, FullPotential]


@dataclass
class BogoliubovState:
    """Quasi-free-state variational data on a momentum grid."""

    grid: MomentumGrid
    gamma: NDArray
    alpha: NDArray
    rho0: float

    @property
    def rho_plus(self) -> float:
        return self.grid.integrate(self.gamma)

    @property
    def rho(self) -> float:
        return self.rho0 + self.rho_plus

    def validate(self) -> None:
        g = np.asarray(self.gamma, dtype=float)
        a = np.asarray(self.alpha, dtype=float)
        if g.shape != self.grid.p.shape or a.shape != self.grid.p.shape:
            raise ValidationError("not a state: field shapes do not match the grid")
        if self.rho0 < 0:
            raise ValidationError("not a state: condensate density must be >= 0")
        if np.any(g < 0):
            raise ValidationError("not a state: gamma must be >= 0")
        slack = 1e-12 * (1.0 + g * (1.0 + g)) + 1e-300
        if np.any(a**2 > g * (1.0 + g) + slack):
            raise ValidationError("not a state: alpha^2 <= gamma (1 + gamma) violated")


@dataclass(frozen=True)
class EnergyBreakdown:
    """Per-term energy densities; ``total`` is their sum.

    For ``minimize`` in scattering-constant mode the exchange slot carries the
    second-order compensation term of the substituted coupling (see module
    docstring); pairing and exchange are then individually cutoff-dependent
    while their sum with the rest is stable.
    """

    kinetic: float
    hartree: float
    pairing: float
    exchange: float

    @property
    def total(self) -> float:
        return self.kinetic + self.hartree + self.pairing + self.exchange

    def as_dict(self) -> dict:
        return {
            "kinetic": self.kinetic,
            "hartree": self.hartree,
            "pairing": self.pairing,
            "exchange": self.exchange,
            "total": self.total,
        }


@dataclass(frozen=True)
class DepletionReport:
    rho_plus: float
    fraction: float


@dataclass(frozen=True)
class MinimizeDiagnostics:
    iterations: int
    grad_sup: float
    grad_tol: float
    converged: bool
    a_eff: float
    mode: str


class MinimizeResult(NamedTuple):
    state: BogoliubovState
    energy: EnergyBreakdown
    diagnostics: MinimizeDiagnostics


def effective_scattering_length(mode: InteractionMode) -> float:
    """The scattering length the mode represents (solved from v if needed)."""
    if isinstance(mode, ScatteringConstant):
        return mode.a
    return scattering.solve(mode.potential, 3).a


def vhat_nodes(mode: InteractionMode, p: NDArray) -> NDArray:
    """vhat sampled on the momentum nodes."""
    if isinstance(mode, ScatteringConstant):
        return np.full(len(p), 8.0 * math.pi * mode.a)
    r, wr = _radial_grid(mode.potential, float(np.max(p)))
    v = mode.potential.values(r)
    return _vhat_from_samples(p, r, wr * v)


def vhat_zero(mode: InteractionMode) -> float:
    if isinstance(mode, ScatteringConstant):
        return 8.0 * math.pi * mode.a
    return mode.potential.integral(3)


def exchange_kernel(mode: InteractionMode, p: NDArray) -> NDArray:
    """Angular average K(p, q) of vhat(p - q); constant 8 pi a in SC mode."""
    if isinstance(mode, ScatteringConstant):
        return np.full((len(p), len(p)), 8.0 * math.pi * mode.a)
    r, wr = _radial_grid(mode.potential, float(np.max(p)))
    v = mode.potential.values(r)
    s = np.sin(np.outer(p, r))
    k = (s * (wr * v)[None, :]) @ s.T
    k *= 4.0 * math.pi / np.outer(p, p)
    return 0.5 * (k + k.T)


def _radial_grid(potential: RadialPotential, p_max: float) -> tuple[NDArray, NDArray]:
    # resolve both the potential profile and sin(p_max r) oscillations
    spacing = min(potential.range / 200.0, 0.15 / max(p_max, 1.0 / potential.range))
    if potential.range / spacing > 2e6:
        raise SolverError("quadrature too coarse to be built: cutoff * range is too "
                          "large; pass an explicit momentum cutoff")
    return simpson_grid(potential.breakpoints(), spacing)


def _vhat_from_samples(p: NDArray, r: NDArray, wv: NDArray) -> NDArray:
    return (np.sin(np.outer(p, r)) @ (wv * r)) * (4.0 * math.pi / p)


def evaluate_functional(state: BogoliubovState, mode: InteractionMode) -> EnergyBreakdown:
    """Literal discretized functional at the given state (any mode)."""
    state.validate()
    p, w = state.grid.p, state.grid.w
    gamma, alpha = state.gamma, state.alpha
    s_g = float(w @ gamma)
    s_a = float(w @ alpha)
    rho = state.rho0 + s_g
    kinetic = float(w @ (p**2 * gamma))
    hartree = 0.5 * vhat_zero(mode) * rho**2
    vh = vhat_nodes(mode, p)
    pairing = state.rho0 * float(w @ (vh * (gamma + alpha)))
    kern = exchange_kernel(mode, p)
    wg = w * gamma
    wa = w * alpha
    exchange = 0.5 * float(wg @ kern @ wg + wa @ kern @ wa)
    return EnergyBreakdown(kinetic=kinetic, hartree=hartree, pairing=pairing,
                           exchange=exchange)


def depletion(state: BogoliubovState) -> DepletionReport:
    """Non-condensed density and its fraction of the total."""
    state.validate()
    rho_plus = state.rho_plus
    rho = state.rho0 + rho_plus
    return DepletionReport(rho_plus=rho_plus, fraction=rho_plus / rho if rho > 0 else 0.0)


def _grad_floor(w: NDArray, a_coef: NDArray, d_coef: NDArray, beta: NDArray) -> float:
    """Float64 cancellation floor for the beta-gradient components."""
    scale = np.abs(w) * (np.abs(a_coef) * np.abs(np.sinh(2 * beta))
                         + np.abs(d_coef) * np.cosh(2 * beta))
    return 64.0 * _EPS * float(np.max(scale)) if len(scale) else 0.0


def _minimize_scattering_constant(rho: float, mode: ScatteringConstant,
                                  grid_spec: GridSpec, solver: SolverSpec) -> MinimizeResult:
    g = 8.0 * math.pi * mode.a
    grid = grid_spec.build(rho, mode.a)
    p, w = grid.p, grid.w
    rho0 = rho
    iterations = 0
    for _ in range(solver.max_iter):
        iterations += 1
        c = g * rho0
        ratio = c / (p**2 + c)
        beta = 0.5 * np.arctanh(ratio)
        gamma = np.sinh(beta) ** 2
        s_g = float(w @ gamma)
        if s_g >= rho:
            raise SolverError("depletion exceeds density: gas parameter too large "
                              "for the quasi-free ansatz")
        rho0_new = rho - s_g
        if abs(rho0_new - rho0) <= 1e-15 * rho:
            rho0 = rho0_new
            break
        rho0 = rho0_new
    else:
        raise SolverError("no convergence: condensate self-consistency stalled")

    c = g * rho0
    beta = 0.5 * np.arctanh(c / (p**2 + c))
    gamma = np.sinh(beta) ** 2
    alpha = -0.5 * np.sinh(2.0 * beta)
    s_g = float(w @ gamma)
    rho0 = rho - s_g
    state = BogoliubovState(grid=grid, gamma=gamma, alpha=alpha, rho0=rho0)

    kinetic = float(w @ (p**2 * gamma))
    hartree = 0.5 * g * rho**2
    pairing = g * rho0 * float(w @ (gamma + alpha))
    compensation = float(w @ (g**2 * rho0**2 / (4.0 * p**2)))
    energy = EnergyBreakdown(kinetic=kinetic, hartree=hartree, pairing=pairing,
                             exchange=compensation)

    a_coef = p**2 + c
    d_coef = np.full_like(p, c)
    grad = w * (a_coef * np.sinh(2 * beta) - d_coef * np.cosh(2 * beta))
    grad_sup = float(np.max(np.abs(grad)))
    tol = solver.grad_tol if solver.grad_tol is not None else 1e-10 * 4.0 * math.pi * rho**2 * mode.a
    tol = max(tol, _grad_floor(w, a_coef, d_coef, beta))
    diag = MinimizeDiagnostics(iterations=iterations, grad_sup=grad_sup, grad_tol=tol,
                               converged=bool(grad_sup <= tol), a_eff=mode.a,
                               mode="scattering-constant")
    return MinimizeResult(state=state, energy=energy, diagnostics=diag)


def _minimize_full_potential(rho: float, mode: FullPotential,
                             grid_spec: GridSpec, solver: SolverSpec) -> MinimizeResult:
    a_eff = effective_scattering_length(mode)
    if a_eff <= 1e-9 * mode.potential.range:
        raise ValidationError("full-potential minimization needs a positive "
                              "scattering length (v = 0 has no interaction scale)")
    grid = grid_spec.build(rho, a_eff)
    p, w = grid.p, grid.w
    vh = vhat_nodes(mode, p)
    kern = exchange_kernel(mode, p)
    vh0 = vhat_zero(mode)

    c0 = 8.0 * math.pi * a_eff * rho
    beta = 0.5 * np.arctanh(c0 / (p**2 + c0))
    theta = solver.mixing
    tol_user = solver.grad_tol if solver.grad_tol is not None \
        else 1e-10 * 4.0 * math.pi * rho**2 * a_eff

    grad_sup = math.inf
    tol = tol_user
    converged = False
    iterations = 0
    prev_sup = math.inf
    for _ in range(solver.max_iter):
        iterations += 1
        gamma = np.sinh(beta) ** 2
        alpha = -0.5 * np.sinh(2.0 * beta)
        s_g = float(w @ gamma)
        if s_g >= rho:
            raise SolverError("depletion exceeds density: gas parameter too large "
                              "for the quasi-free ansatz")
        rho0 = rho - s_g
        pair_sum = float(w @ (vh * (gamma + alpha)))
        a_coef = p**2 + rho0 * vh + kern @ (w * gamma) - pair_sum
        d_coef = rho0 * vh + kern @ (w * alpha)
        if np.any(a_coef <= np.abs(d_coef)):
            theta *= 0.5
            if theta < 1e-4:
                raise SolverError("no convergence: diagonalization fields left "
                                  "the stable region")
            continue
        grad = w * (a_coef * np.sinh(2 * beta) - d_coef * np.cosh(2 * beta))
        grad_sup = float(np.max(np.abs(grad)))
        tol = max(tol_user, _grad_floor(w, a_coef, d_coef, beta))
        if grad_sup <= tol:
            converged = True
            break
        if grad_sup > 4.0 * prev_sup:
            theta = max(0.05, 0.5 * theta)
        prev_sup = grad_sup
        beta = (1.0 - theta) * beta + theta * 0.5 * np.arctanh(d_coef / a_coef)
    if not converged:
        raise SolverError(f"no convergence after {iterations} iterations "
                          f"(gradient sup-norm {grad_sup:.3e}, tolerance {tol:.3e})")

    gamma = np.sinh(beta) ** 2
    alpha = -0.5 * np.sinh(2.0 * beta)
    rho0 = rho - float(w @ gamma)
    state = BogoliubovState(grid=grid, gamma=gamma, alpha=alpha, rho0=rho0)
    s_g = float(w @ gamma)
    kinetic = float(w @ (p**2 * gamma))
    hartree = 0.5 * vh0 * rho**2
    pairing = rho0 * float(w @ (vh * (gamma + alpha)))
    wg = w * gamma
    wa = w * alpha
    exchange = 0.5 * float(wg @ kern @ wg + wa @ kern @ wa)
    energy = EnergyBreakdown(kinetic=kinetic, hartree=hartree, pairing=pairing,
                             exchange=exchange)
    diag = MinimizeDiagnostics(iterations=iterations, grad_sup=grad_sup, grad_tol=tol,
                               converged=converged, a_eff=a_eff, mode="full-potential")
    return MinimizeResult(state=state, energy=energy, diagnostics=diag)


def minimize(rho: float, mode: InteractionMode, grid_spec: GridSpec | None = None,
             solver_spec: SolverSpec | None = None) -> MinimizeResult:
    """Stationary quasi-free state at fixed total density rho.

    Returns (state, energy, diagnostics); the first two entries match the
    (BogoliubovState, EnergyBreakdown) contract, diagnostics carries the
    iteration count and achieved gradient sup-norm.
    """
    if not (rho > 0 and math.isfinite(rho)):
        raise ValidationError("density must be positive and finite")
    grid_spec = grid_spec or GridSpec()
    solver = solver_spec or SolverSpec()
    if isinstance(mode, ScatteringConstant):
        return _minimize_scattering_constant(rho, mode, grid_spec, solver)
    if isinstance(mode, FullPotential):
        return _minimize_full_potential(rho, mode, grid_spec, solver)
    raise ValidationError(f"unknown interaction mode {mode!r}")


@dataclass(frozen=True)
class AlphaSolution:
    """Position-space pairing function from the simplified variational equation."""

    r: NDArray
    alpha_check: NDArray
    energy: float
    max_mismatch: float
    a: float


def solve_alpha_equation(potential: RadialPotential, rho: float,
                         grid: scattering.ScatteringGrid | None = None) -> AlphaSolution:
    """Solve -Lap(ac) + v ac / 2 + rho v / 2 = 0 radially and cross-check.

    The radial variable A = r * ac obeys A'' = v A / 2 + rho v r / 2 with
    A(0) = 0 and A' = 0 outside the range.  The solution is built by shooting
    with the homogeneous solution, verified against -rho * omega from the
    scattering module, and the simplified energy
    rho int v ac / 2 + vhat(0) rho^2 / 2 is returned.
    """
    if not (rho > 0 and math.isfinite(rho)):
        raise ValidationError("density must be positive and finite")
    if isinstance(potential, (HardCore, Delta1D)):
        raise ValidationError("alpha equation needs a finite 3D potential")
    grid = grid or scattering.ScatteringGrid()

    sol = scattering.solve(potential, 3, grid)
    r_int = sol.interior_r
    omega_int = 1.0 - sol.interior_u

    R = potential.range
    h = R / grid.steps
    zones = scattering._zone_plan(potential, 0.0, R, h)
    q_of = lambda rr: 0.5 * potential.values(rr)
    zero = lambda rr: np.zeros_like(rr)
    src = lambda rr: 0.5 * rho * potential.values(rr) * rr
    r_h, ah, dah, lg_h, panels = scattering._march_zones(zones, q_of, zero, zero, 0.0, 1.0)
    r_p, ap, dap, _, _ = scattering._march_zones(zones, q_of, zero, src, 0.0, 0.0)
    # shooting: exterior A' must vanish; combine at the shared edge scale
    i_r = len(r_h) - 1
    scale_h = np.exp(lg_h - lg_h[i_r])
    sigma = -dap[i_r] / dah[i_r]
    a_vals = ap + sigma * ah * scale_h
    with np.errstate(divide="ignore", invalid="ignore"):
        alpha_check = np.where(r_h > 0.0, a_vals / r_h, dap[0] + sigma * dah[0] * scale_h[0])

    if len(r_h) != len(r_int) or abs(r_h[-1] - r_int[-1]) > 1e-9 * max(R, 1.0):
        raise SolverError("alpha-equation grid does not match the scattering grid")
    max_mismatch = float(np.max(np.abs(alpha_check + rho * omega_int))) / rho

    # energy: rho/2 * 4 pi int r^2 v alpha_check dr + vhat(0) rho^2 / 2
    integral = 0.0
    for lo, hi in panels:
        n = hi - lo
        if n < 2:
            continue
        r_eval = r_h[lo:hi + 1].copy()
        nudge = 1e-12 * (r_h[hi] - r_h[lo])
        r_eval[0] += nudge
        r_eval[-1] -= nudge
        seg = r_h[lo:hi + 1] ** 2 * potential.values(r_eval) * alpha_check[lo:hi + 1]
        hstep = (r_h[hi] - r_h[lo]) / n
        integral += hstep / 3.0 * (seg[0] + seg[-1] + 4.0 * seg[1:-1:2].sum()
                                   + 2.0 * seg[2:-1:2].sum())
    energy = 0.5 * rho * 4.0 * math.pi * integral + 0.5 * potential.integral(3) * rho**2
    return AlphaSolution(r=r_h, alpha_check=alpha_check, energy=energy,
                         max_mismatch=max_mismatch, a=sol.a)


@dataclass(frozen=True)
class SweepPoint:
    """One density of a diluteness sweep (CSV row of ``bog-sweep``)."""

    rho_a3: float
    e_over_4pi_rho2_a: float
    depletion_fraction: float
    iterations: int


@dataclass(frozen=True)
class SlopeFit:
    """Affine least-squares fit of e/(4 pi rho^2 a) - 1 against sqrt(rho a^3)."""

    slope: float
    intercept: float


def lhy_sweep(mode: InteractionMode, rho_a3_values, grid_spec: GridSpec | None = None,
              solver_spec: SolverSpec | None = None) -> list[SweepPoint]:
    """Minimize across a diluteness sweep and normalize by 4 pi rho^2 a."""
    a_eff = effective_scattering_length(mode)
    if a_eff <= 0:
        raise ValidationError("sweep needs a positive scattering length")
    points = []
    for x in rho_a3_values:
        if x <= 0:
            raise ValidationError("rho a^3 values must be positive")
        rho = x / a_eff**3
        state, energy, diag = minimize(rho, mode, grid_spec, solver_spec)
        ratio = energy.total / (4.0 * math.pi * rho**2 * a_eff)
        points.append(SweepPoint(rho_a3=x, e_over_4pi_rho2_a=ratio,
                                 depletion_fraction=depletion(state).fraction,
                                 iterations=diag.iterations))
    return points


def fit_sqrt_slope(points: list[SweepPoint]) -> SlopeFit:
    """Least-squares slope of (e/(4 pi rho^2 a) - 1) versus sqrt(rho a^3)."""
    if len(points) < 2:
        raise ValidationError("slope fit needs at least two sweep points")
    x = np.sqrt([pt.rho_a3 for pt in points])
    y = np.array([pt.e_over_4pi_rho2_a - 1.0 for pt in points])
    slope, intercept = np.polyfit(x, y, 1)
    return SlopeFit(slope=float(slope), intercept=float(intercept))
