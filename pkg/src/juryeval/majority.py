"""Majority voting baseline.

MV decides each item by the label held by at least two of the three
classifiers, and evaluates the classifiers by grading them against that
imputed answer key.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .core import CLASSIFIERS, LABELS, PATTERNS, ByTrueLabelCounts, EvaluationPoint, PatternCounts, check_pattern


def mv_decide(pattern: str) -> str:
    """Label chosen by at least two of three voters."""
    check_pattern(pattern)
    return "a" if pattern.count("a") >= 2 else "b"


def mv_prevalence(freqs: Mapping[str, Fraction]) -> Fraction:
    """Fraction of items whose majority label is ``a``."""
    return sum((freqs[p] for p in PATTERNS if mv_decide(p) == "a"), Fraction(0))


def mv_evaluate(freqs: Mapping[str, Fraction]) -> EvaluationPoint:
    """Evaluation point implied by the majority-vote answer key.

    Accuracy of classifier ``c`` on label ``l`` is the frequency of patterns
    where both ``c`` and the majority say ``l``, divided by the MV prevalence of
    ``l``. When MV never picks a label its accuracies are ``None``.
    """
    p_mv = {"a": mv_prevalence(freqs)}
    p_mv["b"] = 1 - p_mv["a"]
    acc = {}
    for label in LABELS:
        for c in CLASSIFIERS:
            if p_mv[label] == 0:
                acc[c, label] = None
                continue
            agree = sum((freqs[p] for p in PATTERNS if mv_decide(p) == label and p[c] == label), Fraction(0))
            acc[c, label] = agree / p_mv[label]
    return EvaluationPoint(
        p_mv["a"],
        tuple(acc[c, "a"] for c in CLASSIFIERS),
        tuple(acc[c, "b"] for c in CLASSIFIERS),
    )


def mv_partition(counts: PatternCounts) -> ByTrueLabelCounts:
    """The by-label split MV implicitly assumes: every item has its majority label."""
    split = {lab: {p: 0 for p in PATTERNS} for lab in LABELS}
    for p in PATTERNS:
        split[mv_decide(p)][p] = counts[p]
    return ByTrueLabelCounts(split)
