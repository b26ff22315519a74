"""Central configurations formed by two stacked twisted regular polygons.

A numpy/scipy library for building the two-ring configurations, testing
centrality against the first-principles per-body oracle, evaluating the
reduced balance systems, analyzing the signs of the trigonometric kernel
sums that control existence, classifying admissible ring-count pairs by
exact arithmetic, and solving for the coplanar and stacked families.
"""

from .admissible import (
    AdmissibilityReport,
    Verdict,
    admissible,
    double_ring_residuals,
    nonexistence_certificate,
    tangential_infeasibility_scan,
)
from .errors import (
    BracketCountError,
    CollisionError,
    DegenerateError,
    NoRootInBracketError,
    NotCenteredError,
    PolyCCError,
    SingularityError,
)
from .nbody import (
    BodySystem,
    CCReport,
    cc_residual,
    center_of_mass_shift,
    moment_of_inertia,
    potential,
)
from .polygons import TwistedPairParams, build, centered_positions, mass_center_height
from .residuals import (
    PolygonConstants,
    ResidualVector,
    planar_mass_ratio,
    residual_vector,
    self_interaction_constant,
    spatial_system,
)
from .signsums import (
    SeriesCoeffs,
    half_sum_root_gap,
    half_sum_root_gap_limit,
    odd_even_cube_gap,
    odd_even_radial_gap,
    odd_even_sqrt_gap,
    power_sum_root,
    series_coeffs,
    sine_zero_angles,
    twisted_sine_sum,
)
from .solve import (
    BranchTag,
    SolveResult,
    equal_size_height,
    existence_scan_b,
    scan_rows_to_csv,
    solve_planar,
    solve_spatial,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityReport",
    "BodySystem",
    "BracketCountError",
    "BranchTag",
    "CCReport",
    "CollisionError",
    "DegenerateError",
    "NoRootInBracketError",
    "NotCenteredError",
    "PolyCCError",
    "PolygonConstants",
    "ResidualVector",
    "SeriesCoeffs",
    "SingularityError",
    "SolveResult",
    "TwistedPairParams",
    "Verdict",
    "admissible",
    "build",
    "cc_residual",
    "center_of_mass_shift",
    "centered_positions",
    "double_ring_residuals",
    "equal_size_height",
    "existence_scan_b",
    "half_sum_root_gap",
    "half_sum_root_gap_limit",
    "mass_center_height",
    "moment_of_inertia",
    "nonexistence_certificate",
    "odd_even_cube_gap",
    "odd_even_radial_gap",
    "odd_even_sqrt_gap",
    "planar_mass_ratio",
    "potential",
    "power_sum_root",
    "residual_vector",
    "scan_rows_to_csv",
    "self_interaction_constant",
    "series_coeffs",
    "sine_zero_angles",
    "solve_planar",
    "solve_spatial",
    "spatial_system",
    "tangential_infeasibility_scan",
    "twisted_sine_sum",
]
