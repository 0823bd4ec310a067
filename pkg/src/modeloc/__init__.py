"""High-frequency Laplacian eigenmodes in separable domains and their
L_p localization diagnostics."""

from .bessel import (
    ASYMPTOTIC_CONSTANTS,
    AsymptoticConstants,
    ZeroSpec,
    bessel_j,
    bessel_j_prime,
    find_zero,
    kapteyn_rhs,
    sph_bessel_j,
    sph_bessel_j_prime,
    zeros_list,
)
from .errors import (
    BracketError,
    ConvergenceError,
    DomainError,
    InvalidIndexError,
    ModelocError,
    RootScanExhaustedError,
    TruncationError,
    UnsupportedConditionError,
)
from .localization import (
    AngularSector,
    BoxRegion,
    OuterShell,
    RadialCore,
    RatioReport,
    SectorBoundConstants,
    SectorComplement,
    WholeDomain,
    ball_whispering_ratio,
    bouncing_bound,
    bouncing_ratio,
    bouncing_sweep,
    box_ratio,
    epsilon_lower,
    focusing_ratio,
    fp_scaling_probe,
    lp_norm,
    measure_fraction,
    rectangle_lower_bound,
    whispering_ratio,
)
from .mathieu import (
    MathieuBasis,
    angular_eval,
    asymptotic_angular,
    g_bound_check,
    radial_eval,
    solve_characteristic,
)
from .modes import (
    Ball,
    BoundaryCondition,
    Disk,
    Ellipse,
    EllipticAnnulus,
    Mode,
    Rectangle,
    annulus_mode,
    annulus_q_solve,
    ball_mode,
    boundary_residual,
    disk_mode,
    ellipse_mode,
    ellipse_q_solve,
    helmholtz_residual,
    legendre_pnl,
    rectangle_mode,
)

__version__ = "0.1.0"
