"""Zero-energy scattering in d = 1, 2, 3.

Solves the radial reduction of  -Lap(u) + (1/2) v u = 0  outward from the
origin with a fixed-step classic Runge-Kutta march and matches to the exact
exterior forms

    d=1: u(x) = |x| - a      d=2: u(r) = ln(r/a)      d=3: u(r) = 1 - a/r

to extract the scattering length a.  The d=3 problem is integrated in the
regular variable w = r*u (w'' = v w / 2, w(0) = 0, w'(0) = 1) which avoids the
coordinate singularity; d=2 starts at r0 = R*1e-6 with u'(r0) = 0 regularity;
d=1 integrates the even solution with u'(0) = 0.  Hard cores never touch the
integrator: the boundary condition u = 0 at the core radius gives a = R
exactly, and the 1D delta interaction is handled analytically (a = -2/c).

Integration panels are aligned with every potential discontinuity, and the
region next to the d=2 coordinate singularity is graded so the fixed-step
march keeps its full order there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .errors import SolverError, ValidationError
from .potentials import Delta1D, HardCore, RadialPotential

_FREE_EPS = 1e-300


@dataclass(frozen=True)
class ScatteringGrid:
    """Resolution of the outward march.

    ``steps`` is the number of base RK4 steps across [0, R]; the exterior
    [R, R_out] reuses a coarser spacing (the equation is exactly linear
    there).  ``rout_factor`` sets R_out = rout_factor * R.
    """

    steps: int = 10_000
    rout_factor: float = 2.0

    def __post_init__(self) -> None:
        if self.steps < 16:
            raise ValidationError("scattering grid needs at least 16 steps")
        if self.rout_factor <= 1.0:
            raise ValidationError("rout_factor must exceed 1")


@dataclass
class ScatteringSolution:
    """Scattering length plus the sampled scattering function.

    ``grid`` holds radii in (0, R_out]; ``u`` the normalized scattering
    function on it; ``omega`` = 1 - u (3D only, else None); ``residual`` the
    relative sup-norm deviation of u from the exact exterior form on r > R.
    """

    dim: int
    a: float
    range: float
    grid: NDArray
    u: NDArray
    omega: NDArray | None
    residual: float
    # interior samples (including r = 0 where applicable) kept for quadrature
    interior_r: NDArray = field(repr=False, default=None)
    interior_u: NDArray = field(repr=False, default=None)
    interior_panels: list = field(repr=False, default_factory=list)


_RESCALE_AT = 1e220


def _rk4_march(r_lo: float, r_hi: float, n: int, q: NDArray, g: NDArray, s: NDArray,
               y0: float, v0: float, log0: float = 0.0) -> tuple[NDArray, NDArray, NDArray]:
    """Classic RK4 for y'' = q(r) y + g(r) y' + s(r) on n uniform steps.

    q, g, s are sampled on the half-step grid (2n+1 points).  For homogeneous
    equations (s = 0) the pair (y, y') is renormalized whenever it grows past
    _RESCALE_AT; node i stores values divided by exp(logs[i] - log0), which
    keeps stiff barriers (huge v0) inside floating-point range.
    """
    h = (r_hi - r_lo) / n
    ys = np.empty(n + 1)
    vs = np.empty(n + 1)
    logs = np.empty(n + 1)
    ql, gl, sl = q.tolist(), g.tolist(), s.tolist()
    homogeneous = not np.any(s)
    y, v = float(y0), float(v0)
    log_acc = log0
    ys[0], vs[0], logs[0] = y, v, log_acc
    h2, h6 = 0.5 * h, h / 6.0
    for i in range(n):
        i2 = 2 * i
        q0, g0, s0 = ql[i2], gl[i2], sl[i2]
        qm, gm, sm = ql[i2 + 1], gl[i2 + 1], sl[i2 + 1]
        q1, g1, s1 = ql[i2 + 2], gl[i2 + 2], sl[i2 + 2]
        k1y = v
        k1v = q0 * y + g0 * v + s0
        y2 = y + h2 * k1y
        v2 = v + h2 * k1v
        k2y = v2
        k2v = qm * y2 + gm * v2 + sm
        y3 = y + h2 * k2y
        v3 = v + h2 * k2v
        k3y = v3
        k3v = qm * y3 + gm * v3 + sm
        y4 = y + h * k3y
        v4 = v + h * k3v
        k4y = v4
        k4v = q1 * y4 + g1 * v4 + s1
        y = y + h6 * (k1y + 2.0 * (k2y + k3y) + k4y)
        v = v + h6 * (k1v + 2.0 * (k2v + k3v) + k4v)
        if homogeneous:
            m = max(abs(y), abs(v))
            if m > _RESCALE_AT:
                y /= m
                v /= m
                log_acc += math.log(m)
        ys[i + 1], vs[i + 1], logs[i + 1] = y, v, log_acc
    return ys, vs, logs


def _even(n: int) -> int:
    return n + (n % 2)


def _zone_plan(potential: RadialPotential, lo: float, hi: float, h: float) -> list[tuple[float, float, int]]:
    """Panel-aligned integration zones covering [lo, hi] with spacing <= h."""
    cuts = sorted({lo, hi} | {b for b in potential.breakpoints() if lo < b < hi})
    zones = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        n = _even(max(4, math.ceil((b - a) / h)))
        zones.append((a, b, n))
    return zones


def _march_zones(zones, q_of, g_of, s_of, y0, v0):
    """March consecutive zones, concatenating nodes (shared endpoints merged)."""
    rs: list[NDArray] = []
    ys: list[NDArray] = []
    vs: list[NDArray] = []
    lgs: list[NDArray] = []
    panels: list[tuple[int, int]] = []
    y, v, lg = y0, v0, 0.0
    count = 0
    for lo, hi, n in zones:
        half = np.linspace(lo, hi, 2 * n + 1)
        # sample one-sided limits at zone boundaries (soft-sphere edges etc.)
        half_eval = half.copy()
        nudge = 1e-12 * (hi - lo)
        half_eval[0] += nudge
        half_eval[-1] -= nudge
        seg_y, seg_v, seg_lg = _rk4_march(lo, hi, n, q_of(half_eval), g_of(half_eval),
                                          s_of(half_eval), y, v, lg)
        y, v, lg = float(seg_y[-1]), float(seg_v[-1]), float(seg_lg[-1])
        if rs:
            rs.append(np.linspace(lo, hi, n + 1)[1:])
            ys.append(seg_y[1:])
            vs.append(seg_v[1:])
            lgs.append(seg_lg[1:])
            panels.append((count - 1, count - 1 + n))
            count += n
        else:
            rs.append(np.linspace(lo, hi, n + 1))
            ys.append(seg_y)
            vs.append(seg_v)
            lgs.append(seg_lg)
            panels.append((0, n))
            count = n + 1
    return (np.concatenate(rs), np.concatenate(ys), np.concatenate(vs),
            np.concatenate(lgs), panels)


def _check_no_sign_change(values: NDArray, what: str) -> None:
    if np.any(values < 0.0):
        raise SolverError(f"sign change detected in the scattering {what}; "
                          "input potential must be non-negative")


def _hardcore_solution(radius: float, dim: int, grid: ScatteringGrid) -> ScatteringSolution:
    r_out = grid.rout_factor * radius
    r = np.linspace(0.0, r_out, _even(grid.steps) + 1)[1:]
    if dim == 3:
        u = np.where(r > radius, 1.0 - radius / r, 0.0)
    elif dim == 2:
        u = np.where(r > radius, np.log(np.maximum(r, radius) / radius), 0.0)
    else:
        u = np.where(r > radius, r - radius, 0.0)
    omega = 1.0 - u if dim == 3 else None
    return ScatteringSolution(dim=dim, a=radius, range=radius, grid=r, u=u,
                              omega=omega, residual=0.0)


def solve(potential: RadialPotential, dim: int,
          grid: ScatteringGrid | None = None) -> ScatteringSolution:
    """Solve the zero-energy problem and extract the scattering length.

    Raises SolverError("sign change detected") if the scattering function
    goes negative in the interior (impossible for valid v >= 0 inputs) and
    ValidationError("free 1D gas") for v = 0 in d = 1, where a = -infinity.
    """
    if dim not in (1, 2, 3):
        raise ValidationError(f"dim must be 1, 2 or 3, got {dim}")
    grid = grid or ScatteringGrid()

    if isinstance(potential, Delta1D):
        if dim != 1:
            raise ValidationError("delta interaction is only admissible in d = 1")
        a = -2.0 / potential.c
        r_out = 2.0 * abs(a)
        r = np.linspace(0.0, r_out, _even(grid.steps) + 1)[1:]
        return ScatteringSolution(dim=1, a=a, range=0.0, grid=r, u=r - a,
                                  omega=None, residual=0.0)

    if isinstance(potential, HardCore):
        return _hardcore_solution(potential.radius, dim, grid)

    R = potential.range
    r_out = grid.rout_factor * R
    h = R / grid.steps
    q_of = lambda r: 0.5 * potential.values(r)
    zero = lambda r: np.zeros_like(r)

    if dim == 3:
        zones = _zone_plan(potential, 0.0, R, h)
        zones += [(R, r_out, _even(max(64, grid.steps // 10)))]
        r, w, dw, lg, panels = _march_zones(zones, q_of, zero, zero, 0.0, 1.0)
        _check_no_sign_change(w, "function")
        i_match = int(np.argmin(np.abs(r - R)))
        wR, dwR = w[i_match], dw[i_match]
        a = R - wR / dwR
        scale = np.exp(lg - lg[i_match])
        with np.errstate(divide="ignore", invalid="ignore"):
            u = np.where(r > 0.0, w * scale / (dwR * r), scale[0] / dwR)
        exact = lambda rr: 1.0 - a / rr

    elif dim == 2:
        r0 = R * 1e-6
        # graded inner zone keeps full RK4 order next to the 1/r coefficient
        inner_hi = min(200.0 * h, R)
        zones = [(r0, inner_hi, _even(max(400, grid.steps)))]
        zones += _zone_plan(potential, inner_hi, R, h)
        zones += [(R, r_out, _even(max(64, grid.steps // 10)))]
        g_of = lambda r: -1.0 / r
        r, u_raw, du_raw, lg, panels = _march_zones(zones, q_of, g_of, zero, 1.0, 0.0)
        _check_no_sign_change(u_raw, "function")
        i_match = int(np.argmin(np.abs(r - R)))
        scale = np.exp(lg - lg[i_match])
        B = R * du_raw[i_match]
        if abs(B) <= _FREE_EPS * abs(u_raw[i_match]) or B == 0.0:
            a = 0.0
            u = u_raw * scale / u_raw[i_match]
            exact = lambda rr: np.ones_like(rr)
        else:
            a = R * math.exp(-u_raw[i_match] / B)
            u = u_raw * scale / B
            exact = lambda rr: np.log(rr / a)

    else:  # dim == 1
        zones = _zone_plan(potential, 0.0, R, h)
        zones += [(R, r_out, _even(max(64, grid.steps // 10)))]
        r, u_raw, du_raw, lg, panels = _march_zones(zones, q_of, zero, zero, 1.0, 0.0)
        _check_no_sign_change(u_raw, "function")
        i_match = int(np.argmin(np.abs(r - R)))
        C = du_raw[i_match]
        if abs(C) <= _FREE_EPS:
            raise ValidationError("free 1D gas: v = 0 in d = 1 corresponds to a = -infinity")
        a = R - u_raw[i_match] / C
        u = u_raw * np.exp(lg - lg[i_match]) / C
        exact = lambda rr: rr - a

    ext = r > R * (1.0 + 1e-12)
    if np.any(ext):
        u_ext = exact(r[ext])
        scale = float(np.max(np.abs(u_ext)))
        residual = float(np.max(np.abs(u[ext] - u_ext)) / max(scale, 1e-30))
    else:
        residual = 0.0

    interior = r <= R * (1.0 + 1e-12)
    n_int = int(np.count_nonzero(interior))
    # zones are split exactly at R, so panels never straddle the interior edge
    interior_panels = [(lo, hi) for lo, hi in panels if hi <= n_int - 1]

    pos = r > 0.0
    omega = 1.0 - u[pos] if dim == 3 else None
    return ScatteringSolution(
        dim=dim, a=float(a), range=R, grid=r[pos], u=u[pos], omega=omega,
        residual=residual, interior_r=r[:n_int], interior_u=u[:n_int],
        interior_panels=interior_panels,
    )


@dataclass(frozen=True)
class IdentityCheck:
    """Both sides of 8*pi*a = int v u d^3x and their relative gap."""

    lhs: float
    rhs: float
    relative_gap: float


def check_identity_8pia(solution: ScatteringSolution,
                        potential: RadialPotential) -> IdentityCheck:
    """Check 8*pi*a against 4*pi * int r^2 v(r) u(r) dr on the solution grid."""
    if solution.dim != 3:
        raise ValidationError("the 8*pi*a identity is three-dimensional")
    if isinstance(potential, HardCore):
        raise ValidationError("hard core: identity not evaluable "
                              "(v*u is a boundary pairing)")
    if not potential.has_finite_integral:
        raise ValidationError("identity requires a finite-integral potential")
    r = solution.interior_r
    u = solution.interior_u
    if r is None or len(r) < 3:
        raise ValidationError("solution carries no interior samples")
    rhs = 0.0
    for lo, hi in solution.interior_panels:
        n = hi - lo
        if n < 2:
            continue
        # one-sided potential limits at panel boundaries
        r_eval = r[lo:hi + 1].copy()
        nudge = 1e-12 * (r[hi] - r[lo])
        r_eval[0] += nudge
        r_eval[-1] -= nudge
        seg = r[lo:hi + 1] ** 2 * potential.values(r_eval) * u[lo:hi + 1]
        hstep = (r[hi] - r[lo]) / n
        rhs += hstep / 3.0 * (seg[0] + seg[-1] + 4.0 * seg[1:-1:2].sum()
                              + 2.0 * seg[2:-1:2].sum())
    rhs *= 4.0 * math.pi
    lhs = 8.0 * math.pi * solution.a
    scale = max(abs(lhs), abs(rhs))
    # a is determined to ~1e-12 R absolute, so below that both sides are zero
    noise = 8.0 * math.pi * solution.range * 1e-11
    gap = 0.0 if scale <= noise else abs(lhs - rhs) / scale
    return IdentityCheck(lhs=lhs, rhs=rhs, relative_gap=float(gap))
