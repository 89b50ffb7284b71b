"""boselab: numerical laboratory for dilute Bose gas ground-state energetics.

Units: hbar = 1, particle mass 1/2, so single-particle kinetic energy is p^2.
Lengths are dimensionless multiples of a user-chosen base length; energies and
densities carry the matching powers.
"""

from .asymptotics import (
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
from .bogoliubov import (
    BogoliubovState,
    EnergyBreakdown,
    FullPotential,
    GridSpec,
    MomentumGrid,
    ScatteringConstant,
    SolverSpec,
    depletion,
    evaluate_functional,
    fit_sqrt_slope,
    lhy_sweep,
    minimize,
    solve_alpha_equation,
)
from .errors import BoselabError, SolverError, ValidationError
from .liebliniger import QuadSpec, dilute_comparison, energy_density
from .liebliniger import solve as lieb_liniger_solve
from .potentials import (
    INFINITE,
    Delta1D,
    Gaussian,
    HardCore,
    RadialPotential,
    SoftSphere,
    Tabulated,
    potential_from_json,
    tabulated_from_csv,
)
from .scattering import ScatteringGrid, check_identity_8pia
from .scattering import solve as scattering_solve

__version__ = "0.1.0"

__all__ = [
    "BoselabError",
    "SolverError",
    "ValidationError",
    "INFINITE",
    "Delta1D",
    "Gaussian",
    "HardCore",
    "RadialPotential",
    "SoftSphere",
    "Tabulated",
    "potential_from_json",
    "tabulated_from_csv",
    "ScatteringGrid",
    "scattering_solve",
    "check_identity_8pia",
    "MomentumGrid",
    "GridSpec",
    "SolverSpec",
    "BogoliubovState",
    "EnergyBreakdown",
    "ScatteringConstant",
    "FullPotential",
    "evaluate_functional",
    "minimize",
    "depletion",
    "solve_alpha_equation",
    "lhy_sweep",
    "fit_sqrt_slope",
    "DiluteInputs",
    "HigherOrderConstants",
    "e3d_lhy",
    "e2d",
    "mora_castin",
    "e1d",
    "e1d_hardcore_exact",
    "wu_expansion",
    "physical_estimates",
    "QuadSpec",
    "lieb_liniger_solve",
    "energy_density",
    "dilute_comparison",
    "__version__",
]
