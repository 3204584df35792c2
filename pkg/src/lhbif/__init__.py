"""Verification-grade toolkit for zero-Hopf bifurcation analysis of the
4D Lorenz-Haken system.

The package reproduces the closed-form objects of the analysis (equilibria,
zero-Hopf parameter configurations, Jordan reductions, first-order averaged
maps, their zeros and stability verdicts) and validates every one of them
against independent numerical oracles: eigensolvers, quadrature, a numeric
coordinate-reduction pipeline, and direct shooting for periodic orbits of the
full system with Floquet analysis.
"""

from .errors import (
    AxisSingularError,
    BlowUpError,
    DegenerateParameterError,
    ExtractionError,
    InternalInconsistencyError,
    LhbifError,
    NonHyperbolicError,
    OrbitNotFoundError,
    ReparametrizationError,
)
from .model import (
    SIGMA,
    Equilibrium,
    EquilibriumKind,
    EquilibriumSet,
    SystemParams,
    delta,
    equilibria,
    jacobian,
    plus_equilibrium,
    residual,
    vector_field,
)
from .spectrum import (
    QuarticCoeffs,
    ZeroHopfCertificate,
    char_poly,
    is_zero_hopf,
    origin_quartic,
    spectrum_distance,
    zero_hopf_params,
)
from .reduction import (
    LinearChange,
    ReducedField,
    UnfoldingSpec,
    first_order_field_closed,
    first_order_field_numeric,
    jordan_change,
    jordan_matrix,
    perturb,
    translation_point,
)
from .averaging import (
    AveragedMap,
    AveragedZero,
    StabilityReport,
    average_quadrature,
    averaged_map_closed,
    averaged_zeros,
    stability_analysis,
)
from .orbits import (
    ConvergenceReport,
    IntegratorConfig,
    PeriodicOrbit,
    Trajectory,
    epsilon_sweep,
    find_periodic_orbit,
    guiding_center,
    integrate,
    variational_flow,
)

__version__ = "0.1.0"

__all__ = [
    "AxisSingularError",
    "BlowUpError",
    "DegenerateParameterError",
    "ExtractionError",
    "InternalInconsistencyError",
    "LhbifError",
    "NonHyperbolicError",
    "OrbitNotFoundError",
    "ReparametrizationError",
    "SIGMA",
    "Equilibrium",
    "EquilibriumKind",
    "EquilibriumSet",
    "SystemParams",
    "delta",
    "equilibria",
    "jacobian",
    "plus_equilibrium",
    "residual",
    "vector_field",
    "QuarticCoeffs",
    "ZeroHopfCertificate",
    "char_poly",
    "is_zero_hopf",
    "origin_quartic",
    "spectrum_distance",
    "zero_hopf_params",
    "LinearChange",
    "ReducedField",
    "UnfoldingSpec",
    "first_order_field_closed",
    "first_order_field_numeric",
    "jordan_change",
    "jordan_matrix",
    "perturb",
    "translation_point",
    "AveragedMap",
    "AveragedZero",
    "StabilityReport",
    "average_quadrature",
    "averaged_map_closed",
    "averaged_zeros",
    "stability_analysis",
    "ConvergenceReport",
    "IntegratorConfig",
    "PeriodicOrbit",
    "Trajectory",
    "epsilon_sweep",
    "find_periodic_orbit",
    "guiding_center",
    "integrate",
    "variational_flow",
    "__version__",
]
