"""Catalog of admissible two-body potentials and derived quantities.

Every potential here is spherically symmetric, non-negative and vanishes
beyond a finite range R.  Five families are supported:

* ``HardCore``   -- infinite inside a core radius, zero outside.
* ``SoftSphere`` -- constant barrier v0 for r < R, zero outside.
* ``Gaussian``   -- v0*exp(-r^2/sigma^2), truncated at a declared radius
  (default ``8*sigma``, where the discarded tail is below 1e-27 relative).
* ``Tabulated``  -- samples on a strictly increasing radial grid, linearly
  interpolated, constant to the left of the first node and zero beyond the
  last one.
* ``Delta1D``    -- the one-dimensional contact interaction v(x) = 2c*delta(x);
  it has no pointwise values and is admissible only in d = 1.

Derived quantities (the d-dimensional integral and the radial 3D Fourier
transform ``vhat(p) = (4*pi/p) * int r v(r) sin(p r) dr``) are evaluated with
an adaptive composite Simpson rule whose panels are aligned with every
discontinuity and interpolation knot, to absolute tolerance ``QUAD_ABS_TOL``.

Hard-core infinities are represented by the tagged sentinel ``INFINITE``,
never by a floating-point overflow: callers must treat the core through
boundary conditions, not large numbers.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from typing import Callable, ClassVar, Sequence

import numpy as np
from numpy.typing import NDArray

from .errors import SolverError, ValidationError

GAUSSIAN_CUTOFF_SIGMAS = 8.0
QUAD_ABS_TOL = 1e-12

_SOLID_ANGLE = {1: 2.0, 2: 2.0 * math.pi, 3: 4.0 * math.pi}


class _Infinite:
    """Tagged 'infinite energy' value returned inside a hard core."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _Infinite()


def _composite_simpson(fn: Callable[[NDArray], NDArray], a: float, b: float, n: int) -> float:
    """Composite Simpson rule with n (even) panels on [a, b].

    Endpoint samples are nudged inward by a relative 1e-12 so that functions
    with jumps at panel boundaries are integrated with their one-sided limits.
    """
    x = np.linspace(a, b, n + 1)
    nudge = 1e-12 * (b - a)
    x[0] += nudge
    x[-1] -= nudge
    y = fn(x)
    h = (b - a) / n
    return float(h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum()))


def _adaptive_simpson(
    fn: Callable[[NDArray], NDArray],
    breakpoints: Sequence[float],
    abs_tol: float = QUAD_ABS_TOL,
    n_start: int = 16,
) -> float:
    """Adaptive composite Simpson rule over panel-aligned segments.

    Each segment between consecutive breakpoints is refined by doubling until
    successive estimates agree within its share of the absolute tolerance.
    """
    pts = [float(t) for t in breakpoints]
    segments = [(lo, hi) for lo, hi in zip(pts[:-1], pts[1:]) if hi > lo]
    if not segments:
        return 0.0
    per_segment = abs_tol / len(segments)
    total = 0.0
    for lo, hi in segments:
        n = max(4, n_start)
        n += n % 2
        prev = _composite_simpson(fn, lo, hi, n)
        while True:
            n *= 2
            cur = _composite_simpson(fn, lo, hi, n)
            if abs(cur - prev) <= per_segment:
                break
            if n >= 2**20:
                raise SolverError("quadrature too coarse: Simpson refinement exhausted")
            prev = cur
        total += cur
    return total


def simpson_grid(breakpoints: Sequence[float], max_spacing: float) -> tuple[NDArray, NDArray]:
    """Fixed Simpson nodes/weights aligned with the given breakpoints.

    Used for vectorized kernel assembly where many integrals share one grid.
    """
    pts = [float(t) for t in breakpoints]
    xs: list[NDArray] = []
    ws: list[NDArray] = []
    for lo, hi in zip(pts[:-1], pts[1:]):
        if hi <= lo:
            continue
        n = max(4, int(math.ceil((hi - lo) / max_spacing)))
        n += n % 2
        x = np.linspace(lo, hi, n + 1)
        nudge = 1e-12 * (hi - lo)
        x[0] += nudge
        x[-1] -= nudge
        h = (hi - lo) / n
        w = np.full(n + 1, 2.0)
        w[1::2] = 4.0
        w[0] = w[-1] = 1.0
        w *= h / 3.0
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


class RadialPotential:
    """Base class for the potential catalog; instances are immutable."""

    kind: ClassVar[str] = "abstract"

    @property
    def range(self) -> float:
        """Radius R beyond which the potential vanishes."""
        raise NotImplementedError

    def breakpoints(self) -> list[float]:
        """Radii where v or its derivative may jump; quadrature panels align here."""
        return [0.0, self.range]

    def values(self, r: NDArray) -> NDArray:
        """Vectorized pointwise values (finite families only)."""
        raise NotImplementedError

    def evaluate(self, r: float):
        """Pointwise value v(r); returns the INFINITE sentinel inside a hard core."""
        if r < 0:
            raise ValidationError("radius must be non-negative")
        return float(self.values(np.asarray([r]))[0])

    @property
    def has_finite_integral(self) -> bool:
        return True

    def integral(self, dim: int) -> float:
        """d-dimensional integral of v over R^d.

        d=3: 4*pi*int r^2 v dr; d=2: 2*pi*int r v dr; d=1: 2*int_0^inf v dr.
        """
        if dim not in (1, 2, 3):
            raise ValidationError(f"dim must be 1, 2 or 3, got {dim}")
        fn = lambda r: self.values(r) * r ** (dim - 1)
        return _SOLID_ANGLE[dim] * _adaptive_simpson(fn, self.breakpoints())

    def fourier_3d(self, p: float) -> float:
        """Radial 3D Fourier transform vhat(p) = int v(x) exp(-i p.x) d^3x.

        Real because v is radial; equals integral(3) at p = 0.
        """
        if p < 0:
            raise ValidationError("momentum must be non-negative")
        if p == 0.0:
            return self.integral(3)
        # panels start finer for oscillatory integrands
        n0 = max(16, 2 * int(math.ceil(p * self.range / 3.0)))
        fn = lambda r: r * self.values(r) * np.sin(p * r)
        return 4.0 * math.pi / p * _adaptive_simpson(fn, self.breakpoints(), n_start=n0)

    def to_json(self) -> dict:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_json()})"


@dataclass(frozen=True, repr=False)
class HardCore(RadialPotential):
    """v = +infinity for r < radius, 0 outside."""

    radius: float

    kind: ClassVar[str] = "hardcore"

    def __post_init__(self) -> None:
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValidationError("hard-core radius must be positive and finite")

    @property
    def range(self) -> float:
        return self.radius

    def evaluate(self, r: float):
        if r < 0:
            raise ValidationError("radius must be non-negative")
        return INFINITE if r < self.radius else 0.0

    @property
    def has_finite_integral(self) -> bool:
        return False

    def integral(self, dim: int) -> float:
        raise ValidationError("hard-core potential: integral diverges")

    def fourier_3d(self, p: float) -> float:
        raise ValidationError("hard-core potential has no Fourier transform")

    def to_json(self) -> dict:
        return {"kind": self.kind, "R": self.radius}


@dataclass(frozen=True, repr=False)
class SoftSphere(RadialPotential):
    """v(r) = height for r < radius, 0 outside."""

    height: float
    radius: float

    kind: ClassVar[str] = "softsphere"

    def __post_init__(self) -> None:
        if self.height < 0 or not math.isfinite(self.height):
            raise ValidationError("soft-sphere height must be finite and >= 0")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValidationError("soft-sphere radius must be positive and finite")

    @property
    def range(self) -> float:
        return self.radius

    def values(self, r: NDArray) -> NDArray:
        r = np.asarray(r, dtype=float)
        return np.where(r < self.radius, self.height, 0.0)

    def to_json(self) -> dict:
        return {"kind": self.kind, "v0": self.height, "R": self.radius}


@dataclass(frozen=True, repr=False)
class Gaussian(RadialPotential):
    """v(r) = height * exp(-r^2/width^2), truncated at the declared cutoff radius."""

    height: float
    width: float
    cutoff: float | None = None

    kind: ClassVar[str] = "gaussian"

    def __post_init__(self) -> None:
        if self.height < 0 or not math.isfinite(self.height):
            raise ValidationError("gaussian height must be finite and >= 0")
        if not (self.width > 0 and math.isfinite(self.width)):
            raise ValidationError("gaussian width must be positive and finite")
        if self.cutoff is not None and self.cutoff <= 0:
            raise ValidationError("gaussian cutoff must be positive")

    @property
    def range(self) -> float:
        return self.cutoff if self.cutoff is not None else GAUSSIAN_CUTOFF_SIGMAS * self.width

    def values(self, r: NDArray) -> NDArray:
        r = np.asarray(r, dtype=float)
        return np.where(r <= self.range, self.height * np.exp(-((r / self.width) ** 2)), 0.0)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "v0": self.height, "sigma": self.width}
        if self.cutoff is not None:
            out["cutoff"] = self.cutoff
        return out


class Tabulated(RadialPotential):
    """Samples v_i >= 0 on a strictly increasing radial grid r_i.

    Linear interpolation between nodes, constant v_0 for r <= r_0 and zero
    beyond the last node (which therefore sets the range).
    """

    kind: ClassVar[str] = "tabulated"

    def __init__(self, r: Sequence[float], v: Sequence[float]):
        r_arr = np.asarray(r, dtype=float)
        v_arr = np.asarray(v, dtype=float)
        if r_arr.ndim != 1 or r_arr.size < 1 or r_arr.shape != v_arr.shape:
            raise ValidationError("tabulated potential needs matching 1D r and v arrays")
        if not np.all(np.isfinite(r_arr)) or not np.all(np.isfinite(v_arr)):
            raise ValidationError("tabulated nodes and values must be finite")
        if np.any(np.diff(r_arr) <= 0):
            raise ValidationError("tabulated radial grid must be strictly increasing")
        if r_arr[0] < 0:
            raise ValidationError("tabulated radii must be non-negative")
        if np.any(v_arr < 0):
            raise ValidationError("tabulated values must be non-negative")
        self._r = r_arr
        self._r.setflags(write=False)
        self._v = v_arr
        self._v.setflags(write=False)

    @property
    def nodes(self) -> NDArray:
        return self._r

    @property
    def samples(self) -> NDArray:
        return self._v

    @property
    def range(self) -> float:
        return float(self._r[-1])

    def breakpoints(self) -> list[float]:
        pts = [0.0] + [float(t) for t in self._r]
        return pts if pts[1] > 0.0 else pts[1:]

    def values(self, r: NDArray) -> NDArray:
        r = np.asarray(r, dtype=float)
        out = np.interp(r, self._r, self._v, left=float(self._v[0]), right=0.0)
        return np.where(r > self._r[-1], 0.0, out)

    def to_json(self) -> dict:
        return {"kind": self.kind, "r": list(self._r), "v": list(self._v)}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Tabulated)
            and np.array_equal(self._r, other._r)
            and np.array_equal(self._v, other._v)
        )

    def __hash__(self) -> int:
        return hash((self._r.tobytes(), self._v.tobytes()))


@dataclass(frozen=True, repr=False)
class Delta1D(RadialPotential):
    """One-dimensional contact interaction v(x) = 2c*delta(x), c > 0.

    Only d = 1 operations accept it; it exists to make the exactly solvable
    delta-gas comparison a first-class input.
    """

    c: float

    kind: ClassVar[str] = "delta1d"

    def __post_init__(self) -> None:
        if not (self.c > 0 and math.isfinite(self.c)):
            raise ValidationError("delta strength c must be positive and finite")

    @property
    def range(self) -> float:
        return 0.0

    def evaluate(self, r: float):
        raise ValidationError("delta interaction: no pointwise evaluation")

    def values(self, r: NDArray) -> NDArray:
        raise ValidationError("delta interaction: no pointwise evaluation")

    def integral(self, dim: int) -> float:
        if dim != 1:
            raise ValidationError("delta interaction is only defined in d = 1")
        return 2.0 * self.c

    def fourier_3d(self, p: float) -> float:
        raise ValidationError("delta interaction is only defined in d = 1")

    def to_json(self) -> dict:
        return {"kind": self.kind, "c": self.c}


def tabulated_from_csv(path: str) -> Tabulated:
    """Load a tabulated potential from a two-column CSV file (r, v)."""
    rows: list[tuple[float, float]] = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().startswith("#"):
                continue
            try:
                rows.append((float(row[0]), float(row[1])))
            except (IndexError, ValueError):
                # tolerate a single header line
                if rows:
                    raise ValidationError(f"malformed CSV row in {path}: {row!r}") from None
    if not rows:
        raise ValidationError(f"no data rows in {path}")
    r, v = zip(*rows)
    return Tabulated(r, v)


def potential_from_json(spec: dict | str, base_dir: str | None = None) -> RadialPotential:
    """Build a potential from its JSON declaration {"kind": ..., parameters...}."""
    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid potential JSON: {exc}") from None
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValidationError("potential JSON must be an object with a 'kind' field")
    kind = str(spec["kind"]).lower().replace("_", "").replace("-", "")
    try:
        if kind == "hardcore":
            return HardCore(radius=float(spec["R"]))
        if kind == "softsphere":
            return SoftSphere(height=float(spec["v0"]), radius=float(spec["R"]))
        if kind == "gaussian":
            cutoff = spec.get("cutoff")
            return Gaussian(
                height=float(spec["v0"]),
                width=float(spec["sigma"]),
                cutoff=None if cutoff is None else float(cutoff),
            )
        if kind == "tabulated":
            if "csv" in spec:
                import os

                path = spec["csv"]
                if base_dir is not None and not os.path.isabs(path):
                    path = os.path.join(base_dir, path)
                return tabulated_from_csv(path)
            return Tabulated(spec["r"], spec["v"])
        if kind == "delta1d":
            return Delta1D(c=float(spec["c"]))
    except KeyError as exc:
        raise ValidationError(f"potential '{kind}' is missing parameter {exc}") from None
    raise ValidationError(f"unknown potential kind {spec['kind']!r}")
