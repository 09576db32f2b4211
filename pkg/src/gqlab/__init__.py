"""gqlab: exact q-calculus, moment-Borel calculus, formal Cauchy solvers,
and numeric summability diagnostics."""

from .calculus import moment_borel, moment_derivative, moment_derivatives_at_zero
from .cauchy import (
    CauchyProblem,
    CauchySolution,
    TransferDirection,
    problem_from_json,
    problem_to_json,
    residual,
    solve_cauchy,
    solve_two_operator,
    transfer,
)
from .charpoly import (
    DirectionReport,
    NewtonPolygonResult,
    admissible_multidirection,
    newton_polygon,
    predict_directions,
    predict_gevrey,
    required_directions,
)
from .errors import (
    ConvergenceError,
    DegenerateSystemError,
    EvaluationError,
    GqlabError,
    InvalidInputError,
    ModeMismatchError,
    RegimeError,
    TruncationError,
    UnsupportedNormalizationError,
)
from .moments import (
    Factorial,
    GammaK,
    Geometric,
    Interleave,
    Inverse,
    MomentSequence,
    One,
    OrderEstimate,
    PreservationVerdict,
    Product,
    QFactorial,
    kernel_series,
    preserves_summability,
    sequence_from_json,
    sequence_order,
    sequence_to_json,
    sequence_value,
)
from .pade import PadeApproximant, PadeConfig, pade, stable_poles
from .probe import (
    ProbeConfig,
    ProbeReport,
    classify_summability,
    gevrey_estimate,
    growth_order,
)
from .qcalc import (
    as_q,
    heine_identity_gap,
    q_binomial_identity_gap,
    q_difference,
    q_factorial,
    q_hypergeometric,
    q_number_factorial,
    q_pochhammer,
    q_pochhammer_inf,
)
from .residues import (
    AnalyticSample,
    q_borel_boundary,
    q_laplace_initial,
    rational_sample,
    series_sample,
)
from .scalars import FLOAT_TOL, GaussianRational, Mode
from .series import BiSeries, TruncatedSeries, rational_series, series_from_json

__version__ = "0.1.0"

__all__ = [
    "AnalyticSample",
    "BiSeries",
    "CauchyProblem",
    "CauchySolution",
    "ConvergenceError",
    "DegenerateSystemError",
    "DirectionReport",
    "EvaluationError",
    "FLOAT_TOL",
    "Factorial",
    "GammaK",
    "GaussianRational",
    "Geometric",
    "GqlabError",
    "Interleave",
    "Inverse",
    "InvalidInputError",
    "Mode",
    "ModeMismatchError",
    "MomentSequence",
    "NewtonPolygonResult",
    "One",
    "OrderEstimate",
    "PadeApproximant",
    "PadeConfig",
    "PreservationVerdict",
    "ProbeConfig",
    "ProbeReport",
    "Product",
    "QFactorial",
    "RegimeError",
    "TransferDirection",
    "TruncatedSeries",
    "TruncationError",
    "UnsupportedNormalizationError",
    "admissible_multidirection",
    "as_q",
    "classify_summability",
    "gevrey_estimate",
    "growth_order",
    "heine_identity_gap",
    "kernel_series",
    "moment_borel",
    "moment_derivative",
    "moment_derivatives_at_zero",
    "newton_polygon",
    "pade",
    "predict_directions",
    "predict_gevrey",
    "preserves_summability",
    "problem_from_json",
    "problem_to_json",
    "q_binomial_identity_gap",
    "q_borel_boundary",
    "q_difference",
    "q_factorial",
    "q_hypergeometric",
    "q_laplace_initial",
    "q_number_factorial",
    "q_pochhammer",
    "q_pochhammer_inf",
    "rational_sample",
    "rational_series",
    "required_directions",
    "residual",
    "sequence_from_json",
    "sequence_order",
    "sequence_to_json",
    "sequence_value",
    "series_from_json",
    "series_sample",
    "solve_cauchy",
    "solve_two_operator",
    "stable_poles",
    "transfer",
]
