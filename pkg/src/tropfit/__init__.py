"""tropfit: best Chebyshev fitting with tropical polynomial and rational models.

The package works over idempotent semifields (max-plus and max-times).
Polynomial fitting reduces to a one-sided linear vector equation with a
closed-form best approximate solution; rational fitting reduces to a
two-sided equation solved by an alternating projection scheme.
"""

from .semifield import (
    MAX_PLUS,
    MAX_TIMES,
    ZERO,
    InversionOfZero,
    MaxPlus,
    MaxTimes,
    Scalar,
    Semifield,
    TropicalError,
    ZeroToNonpositivePower,
    by_name,
    is_zero,
)
from .linalg import (
    DimensionMismatch,
    Distance,
    SemifieldMismatch,
    TropicalMatrix,
    TropicalVector,
    ZeroVector,
    conjugate,
    distance,
    dot,
    full,
    mat_mul,
    mat_vec_mul,
    scale,
    support,
    vec_mat_mul,
)
from .solvers import (
    DEFAULT_MAX_ITER,
    NonRegularInput,
    OneSidedSolution,
    Termination,
    TwoSidedSolution,
    one_sided_solve,
    two_sided_solve,
)
from .approx import (
    DegreeVector,
    FitReport,
    PolynomialModel,
    RationalModel,
    SampleSet,
    ZeroAbscissa,
    ZeroArgument,
    build_poly_matrix,
    eval_polynomial,
    eval_rational,
    fit_polynomial,
    fit_rational,
)
from .search import (
    RangeTooNarrow,
    SearchConfig,
    SearchReport,
    random_search,
    sample_degree_vector,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_PLUS",
    "MAX_TIMES",
    "ZERO",
    "DEFAULT_MAX_ITER",
    "DegreeVector",
    "DimensionMismatch",
    "Distance",
    "FitReport",
    "InversionOfZero",
    "MaxPlus",
    "MaxTimes",
    "NonRegularInput",
    "OneSidedSolution",
    "PolynomialModel",
    "RangeTooNarrow",
    "RationalModel",
    "SampleSet",
    "Scalar",
    "SearchConfig",
    "SearchReport",
    "Semifield",
    "SemifieldMismatch",
    "Termination",
    "TropicalError",
    "TropicalMatrix",
    "TropicalVector",
    "TwoSidedSolution",
    "ZeroAbscissa",
    "ZeroArgument",
    "ZeroToNonpositivePower",
    "ZeroVector",
    "build_poly_matrix",
    "by_name",
    "conjugate",
    "distance",
    "dot",
    "eval_polynomial",
    "eval_rational",
    "fit_polynomial",
    "fit_rational",
    "full",
    "is_zero",
    "mat_mul",
    "mat_vec_mul",
    "one_sided_solve",
    "random_search",
    "sample_degree_vector",
    "scale",
    "support",
    "two_sided_solve",
    "vec_mat_mul",
]
