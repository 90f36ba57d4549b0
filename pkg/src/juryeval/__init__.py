"""Unsupervised evaluation of binary classifier trios from their joint decisions."""

from .core import (
    LABELS,
    PATTERNS,
    ByTrueLabelCounts,
    ConfigurationError,
    DecisionRecord,
    EmptyTestError,
    EvaluationPoint,
    InputError,
    PatternCounts,
    Sketch,
    aggregate,
    frequencies,
    project,
)
from .decisions import (
    ComparisonReport,
    compare_methods,
    count_errors,
    decide,
    enumerate_trios,
    estimate_partition,
    round_partition,
)
from .forward import expected_partition, pattern_frequencies, swap_transform
from .majority import mv_decide, mv_evaluate, mv_partition
from .moments import TrioMoments, delta_pair, delta_trio, marginal_b, trio_moments
from .solver import AeSolution, AlarmKind, AlarmStatus, evaluate, prevalence_quadratic, solve_prevalence
from .surd import Surd
from .synthesis import (
    CorrelationSpec,
    error_correlation_pair,
    error_correlation_trio,
    ground_truth_evaluation,
    sample_correlated,
    sample_independent,
)

__version__ = "0.1.0"

__all__ = [
    "AeSolution",
    "AlarmKind",
    "AlarmStatus",
    "ByTrueLabelCounts",
    "ComparisonReport",
    "ConfigurationError",
    "CorrelationSpec",
    "DecisionRecord",
    "EmptyTestError",
    "EvaluationPoint",
    "InputError",
    "LABELS",
    "PATTERNS",
    "PatternCounts",
    "Sketch",
    "Surd",
    "TrioMoments",
    "aggregate",
    "compare_methods",
    "count_errors",
    "decide",
    "delta_pair",
    "delta_trio",
    "enumerate_trios",
    "error_correlation_pair",
    "error_correlation_trio",
    "estimate_partition",
    "evaluate",
    "expected_partition",
    "frequencies",
    "ground_truth_evaluation",
    "marginal_b",
    "mv_decide",
    "mv_evaluate",
    "mv_partition",
    "pattern_frequencies",
    "prevalence_quadratic",
    "project",
    "round_partition",
    "sample_correlated",
    "sample_independent",
    "solve_prevalence",
    "swap_transform",
    "trio_moments",
]
