"""betadyn: beta-transformation combinatorics, limsup hit sets, and
Hausdorff-dimension formulas, with numerical verification harnesses.

The library splits into:

  core       digit expansions, admissible words, cylinder intervals
  targets    rate/target/exponent families and finite-horizon hit scans
  dimension  closed-form dimension values and the transference calculator
  covering   covering-sum scans, critical exponents, Monte-Carlo measure
             experiments, full-cylinder gap statistics
  serialize  JSON/CSV emitters        figures  matplotlib report renderers
  verify     bundled property suites  cli      command-line front end
"""

from .core import (
    BetaBasis,
    CylinderInterval,
    PrecisionOrderError,
    count_words,
    cylinder_interval,
    cylinder_of_point,
    cylinders,
    digits,
    enumerate_words,
    full_words,
    is_admissible,
    is_full,
    renyi_bounds,
    t_apply,
    t_iterate,
    word_value,
)
from .covering import (
    ContentScan,
    CriticalScan,
    MeasureExperiment,
    content_scan,
    content_terms_thm1,
    content_terms_thm2,
    critical_exponent_scan,
    full_gap_statistics,
    mc_measure_dichotomy,
    thm1_log_term,
    thm2_log_term,
)
from .dimension import (
    AlphaResult,
    DimensionReport,
    MtpProblem,
    MtpResult,
    alpha_exponent,
    classify_simultaneous,
    dim_inhom_planar,
    dim_shrinking_target,
    dim_simultaneous,
    dim_simultaneous_inhom,
    dim_wang_li,
    mtp_lower_bound,
    mtp_matches_simultaneous,
    mtp_problem_for_simultaneous,
)
from .errors import (
    BetadynError,
    BudgetError,
    DomainError,
    InvalidWordError,
    PreconditionError,
)
from .targets import (
    Affine1D,
    Affine2D,
    AffineClampedTau,
    Const1D,
    Const2D,
    ConstTau,
    GeoRate,
    HarmonicLogRate,
    HitIntervalBracket,
    HitRecord,
    Identity1D,
    Interval,
    Lift2D,
    LipschitzMap1D,
    LipschitzMap2D,
    PolyRate,
    PowRate,
    RateFunction,
    TableRate,
    TauFunction,
    approximate_hit_interval,
    hits_1d,
    hits_inhom_planar,
    hits_simultaneous,
    hits_simultaneous_inhom,
    solve_target_point,
    tau_extremes,
)
from .verify import run_suite

__version__ = "0.1.0"

__all__ = [
    "Affine1D",
    "Affine2D",
    "AffineClampedTau",
    "AlphaResult",
    "BetaBasis",
    "BetadynError",
    "BudgetError",
    "Const1D",
    "Const2D",
    "ConstTau",
    "ContentScan",
    "CriticalScan",
    "CylinderInterval",
    "DimensionReport",
    "DomainError",
    "GeoRate",
    "HarmonicLogRate",
    "HitIntervalBracket",
    "HitRecord",
    "Identity1D",
    "Interval",
    "InvalidWordError",
    "Lift2D",
    "LipschitzMap1D",
    "LipschitzMap2D",
    "MeasureExperiment",
    "MtpProblem",
    "MtpResult",
    "PolyRate",
    "PowRate",
    "PrecisionOrderError",
    "PreconditionError",
    "RateFunction",
    "TableRate",
    "TauFunction",
    "alpha_exponent",
    "approximate_hit_interval",
    "classify_simultaneous",
    "content_scan",
    "content_terms_thm1",
    "content_terms_thm2",
    "count_words",
    "critical_exponent_scan",
    "cylinder_interval",
    "cylinder_of_point",
    "cylinders",
    "digits",
    "dim_inhom_planar",
    "dim_shrinking_target",
    "dim_simultaneous",
    "dim_simultaneous_inhom",
    "dim_wang_li",
    "enumerate_words",
    "full_gap_statistics",
    "full_words",
    "hits_1d",
    "hits_inhom_planar",
    "hits_simultaneous",
    "hits_simultaneous_inhom",
    "is_admissible",
    "is_full",
    "mc_measure_dichotomy",
    "mtp_lower_bound",
    "mtp_matches_simultaneous",
    "mtp_problem_for_simultaneous",
    "renyi_bounds",
    "run_suite",
    "solve_target_point",
    "t_apply",
    "t_iterate",
    "tau_extremes",
    "thm1_log_term",
    "thm2_log_term",
    "word_value",
]
