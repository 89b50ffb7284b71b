"""Closed-form ground-state energy density expansions for the dilute gas.

All evaluators use units hbar = 1, mass = 1/2 (kinetic energy p^2) and return
energy densities.  Each formula is the printed truncation of the known
asymptotic series; no resummation is applied.  The natural logarithm is used
throughout.

Higher-order coefficients that the literature leaves as universal constants
(the three-body hyper-volume D, effective range r_s, and the constants C and
I) are user-supplied inputs defaulting to zero; outputs built from the
defaults must be labelled as such by callers (see ``HigherOrderConstants``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError

EULER_MASCHERONI = 0.577215664901533

LHY_COEFFICIENT = 128.0 / (15.0 * math.sqrt(math.pi))
TONKS_COEFFICIENT = math.pi**2 / 3.0
WU_LOG_COEFFICIENT = 8.0 * (4.0 * math.pi / 3.0 - math.sqrt(3.0))


@dataclass(frozen=True)
class DiluteInputs:
    """Density, scattering length and dimension of a dilute-gas evaluation."""

    rho: float
    a: float
    dim: int

    def __post_init__(self) -> None:
        if not (self.rho > 0 and math.isfinite(self.rho)):
            raise ValidationError("density must be positive and finite")
        if self.dim not in (1, 2, 3):
            raise ValidationError(f"dim must be 1, 2 or 3, got {self.dim}")
        if self.dim in (2, 3) and self.a < 0:
            raise ValidationError("scattering length must be >= 0 in d = 2, 3")
        if not math.isfinite(self.a):
            raise ValidationError("scattering length must be finite")

    @property
    def diluteness(self) -> float:
        """The dimensionless gas parameter rho * |a|^dim."""
        return self.rho * abs(self.a) ** self.dim


@dataclass(frozen=True)
class HigherOrderConstants:
    """User-supplied coefficients entering beyond-leading-order formulas.

    D is the three-body scattering hyper-volume (length^4), r_s the effective
    range, C and I dimensionless universal constants.  Defaults of zero are a
    placeholder, not literature values; ``note`` flags that for output
    metadata.
    """

    D: float = 0.0
    r_s: float = 0.0
    C: float = 0.0
    I: float = 0.0

    @property
    def is_default(self) -> bool:
        return self.D == 0.0 and self.r_s == 0.0 and self.C == 0.0 and self.I == 0.0

    @property
    def note(self) -> str:
        return "constants not from paper" if self.is_default else "user-supplied constants"


def _require_dim(inputs: DiluteInputs, dim: int, what: str) -> None:
    if inputs.dim != dim:
        raise ValidationError(f"{what} requires dim = {dim}, got {inputs.dim}")


def _y_parameter(inputs: DiluteInputs) -> float:
    """Y = 1/|log(rho a^2)| for the 2D expansions; requires rho a^2 < 1."""
    x = inputs.rho * inputs.a**2
    if x >= 1.0:
        raise ValidationError("not in dilute regime: rho * a^2 must be < 1")
    if x == 0.0:
        return 0.0
    return 1.0 / abs(math.log(x))


def e3d_lhy(inputs: DiluteInputs) -> float:
    """Two-term 3D expansion 4 pi rho^2 a (1 + (128/15 sqrt(pi)) sqrt(rho a^3))."""
    _require_dim(inputs, 3, "e3d_lhy")
    x = inputs.rho * inputs.a**3
    return 4.0 * math.pi * inputs.rho**2 * inputs.a * (1.0 + LHY_COEFFICIENT * math.sqrt(x))


def e2d(inputs: DiluteInputs) -> float:
    """2D expansion 4 pi rho^2 Y (1 + Y log(Y pi) + (2 Gamma + 1/2) Y)."""
    _require_dim(inputs, 2, "e2d")
    y = _y_parameter(inputs)
    if y == 0.0:
        return 0.0
    bracket = 1.0 + y * math.log(y * math.pi) + (2.0 * EULER_MASCHERONI + 0.5) * y
    return 4.0 * math.pi * inputs.rho**2 * y * bracket


def mora_castin(inputs: DiluteInputs, consts: HigherOrderConstants | None = None) -> float:
    """2D expansion through order Y^2 with the universal constant I."""
    _require_dim(inputs, 2, "mora_castin")
    consts = consts or HigherOrderConstants()
    y = _y_parameter(inputs)
    if y == 0.0:
        return 0.0
    lg = math.log(y * math.pi)
    bracket = (
        1.0
        + y * (lg + 2.0 * EULER_MASCHERONI + 0.5)
        + y**2 * (lg + 2.0 * EULER_MASCHERONI + 1.0) ** 2
        - (8.0 * consts.I / math.pi) * y**2
    )
    return 4.0 * math.pi * inputs.rho**2 * y * bracket


def e1d(inputs: DiluteInputs) -> float:
    """1D expansion (pi^2/3) rho^3 (1 + 2 rho a); a may be negative."""
    _require_dim(inputs, 1, "e1d")
    return TONKS_COEFFICIENT * inputs.rho**3 * (1.0 + 2.0 * inputs.rho * inputs.a)


def e1d_hardcore_exact(rho: float, a: float) -> float:
    """Exact 1D hard-core gas energy density (pi^2/3) rho^3 (1 - rho a)^-2."""
    if not (rho > 0 and math.isfinite(rho)):
        raise ValidationError("density must be positive and finite")
    if a < 0:
        raise ValidationError("hard-core size must be >= 0")
    x = rho * a
    if x >= 1.0:
        raise ValidationError("jammed: density exceeds close packing (rho * a >= 1)")
    return TONKS_COEFFICIENT * rho**3 / (1.0 - x) ** 2


def wu_expansion(inputs: DiluteInputs, consts: HigherOrderConstants | None = None) -> float:
    """3D expansion including the log term and the rho a^3 coefficient.

    The coefficient of the analytic rho a^3 term is
    E = D/(12 pi a^4) + pi r_s / a + C.
    """
    _require_dim(inputs, 3, "wu_expansion")
    if inputs.a <= 0:
        raise ValidationError("wu_expansion requires a > 0")
    consts = consts or HigherOrderConstants()
    x = inputs.rho * inputs.a**3
    if x >= 1.0:
        raise ValidationError("not in dilute regime: rho * a^3 must be < 1")
    e_coeff = consts.D / (12.0 * math.pi * inputs.a**4) + math.pi * consts.r_s / inputs.a + consts.C
    bracket = (
        1.0
        + LHY_COEFFICIENT * math.sqrt(x)
        + WU_LOG_COEFFICIENT * x * math.log(x)
        + e_coeff * x
    )
    return 4.0 * math.pi * inputs.rho**2 * inputs.a * bracket


@dataclass(frozen=True)
class PhysicalEstimates:
    """Box-scale estimates for condensation: healing length, transversal mode
    count at the interaction energy scale, and the depletion bound."""

    healing_length: float
    mode_count: float
    mode_count_rounded: int
    depletion_bound: float


def physical_estimates(rho: float, a: float, r_trap: float, l_box: float) -> PhysicalEstimates:
    """Healing length (rho a)^(-1/2), transversal mode count pi rho a R^2, and
    the relative depletion bound (L sqrt(rho a))^2 sqrt(rho a^3)."""
    for name, val in (("rho", rho), ("a", a), ("R_trap", r_trap), ("L_box", l_box)):
        if not (val > 0 and math.isfinite(val)):
            raise ValidationError(f"{name} must be positive and finite")
    healing = 1.0 / math.sqrt(rho * a)
    modes = math.pi * rho * a * r_trap**2
    bound = (l_box * math.sqrt(rho * a)) ** 2 * math.sqrt(rho * a**3)
    return PhysicalEstimates(
        healing_length=healing,
        mode_count=modes,
        mode_count_rounded=round(modes),
        depletion_bound=bound,
    )
