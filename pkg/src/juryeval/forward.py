"""Generating polynomials: evaluation point -> expected decision frequencies.

For error-independent classifiers the frequency of pattern ``(l0, l1, l2)`` is

    p_a * prod_c P(c says l_c | a) + p_b * prod_c P(c says l_c | b)

with ``P(c says a | a) = pi_{c,a}`` and ``P(c says b | b) = pi_{c,b}``. The
functions here are exact for rational and surd inputs.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .core import (
    CLASSIFIERS,
    LABELS,
    PATTERNS,
    ByTrueLabelCounts,
    ConfigurationError,
    EvaluationPoint,
    PatternCounts,
)
from .surd import is_real


class DomainError(ValueError):
    """Evaluation point outside the probability simplex."""


def _check_valid(point: EvaluationPoint) -> None:
    for v in point.flat():
        if v is None or not is_real(v) or v < 0 or v > 1:
            raise DomainError(f"evaluation point coordinates must lie in [0, 1]: {point}")


def _vote_prob(point: EvaluationPoint, classifier: int, vote: str, truth: str):
    acc = point.acc(classifier, truth)
    return acc if vote == truth else 1 - acc


def label_term(point: EvaluationPoint, pattern: str, truth: str):
    """Probability mass of ``pattern`` contributed by items of label ``truth``."""
    term = point.p_a if truth == "a" else point.p_b
    for c in CLASSIFIERS:
        term = term * _vote_prob(point, c, pattern[c], truth)
    return term


def generating_set(point: EvaluationPoint) -> dict:
    """The eight polynomials evaluated at ``point``, with no domain check.

    Used to substitute solver candidates (possibly out of range or complex)
    back into the model.
    """
    return {p: label_term(point, p, "a") + label_term(point, p, "b") for p in PATTERNS}


def pattern_frequencies(point: EvaluationPoint) -> dict:
    """Expected pattern frequencies for a valid evaluation point."""
    _check_valid(point)
    return generating_set(point)


def expected_partition(point: EvaluationPoint, q: int) -> ByTrueLabelCounts:
    """Expected by-true-label counts on a test of ``q`` items (not rounded)."""
    _check_valid(point)
    if q < 1:
        raise ConfigurationError("test size must be positive")
    return ByTrueLabelCounts(
        {lab: {p: q * label_term(point, p, lab) for p in PATTERNS} for lab in LABELS}
    )


def swap_transform(point: EvaluationPoint) -> EvaluationPoint:
    """The label-swap conjugate that leaves all pattern frequencies unchanged.

    ``p_a -> p_b``, ``pi_{c,a} -> 1 - pi_{c,b}``, ``pi_{c,b} -> 1 - pi_{c,a}``.
    """
    return EvaluationPoint(
        p_a=1 - point.p_a,
        acc_a=tuple(1 - point.acc_b[c] for c in CLASSIFIERS),
        acc_b=tuple(1 - point.acc_a[c] for c in CLASSIFIERS),
    )


def exact_counts(point: EvaluationPoint, scale: int = 1) -> PatternCounts:
    """Smallest integer counts whose frequencies equal the model at a rational point.

    Multiply by ``scale`` for larger tests with the same frequencies.
    """
    freqs = pattern_frequencies(point)
    den = math.lcm(*(Fraction(v).denominator for v in freqs.values()))
    return PatternCounts({p: int(v * den) * scale for p, v in freqs.items()})
