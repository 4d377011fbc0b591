"""Exact and mean-field solutions of the electron/PCP harmonium model.

The model is one electron and one positively charged particle (PCP) of mass
``m`` in concentric isotropic harmonic traps of frequency ``omega``, coupled
by Coulomb attraction. Hartree atomic units throughout.
"""

from .model import ComGaussian, ParameterError, SystemParams, com_ground, derive_params
from .radial import (
    GridPolicy, GridTooSmallError, PotentialSpec, RadialGrid, RadialSolution,
    adiabatic_electron_ground, kinetic_expectation, relative_ground, solve_ground,
)
from .mchf import GaussianBasis, ScfOptions, ScfResult, optimize_exponents, scf, table_basis
from .correlation import (
    CorrelationHill, CorrelationReport, IntraculeRdf, RadialDensity, correlation_hill,
    correlation_radius, correlation_report, exact_components, exact_intracule, exact_one_density, j_ep,
)
from .adiabatic import AdiabaticReport, adiabatic_report
from .sweep import SweepConfig, emit_figure_data, run

__version__ = "0.1.0"
