"""Group label decisions and method comparison.

A method's by-true-label partition estimate determines its decisions: each
pattern gets the label with the larger estimated count. With the algebraic
estimate this can overrule the majority (a minority vote); with the ground
truth partition it is the best any pattern-level rule can do.
"""

from __future__ import annotations

import itertools
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .core import (
    LABELS,
    PATTERNS,
    ByTrueLabelCounts,
    ConfigurationError,
    EvaluationPoint,
    PatternCounts,
    frequencies,
    other_label,
    project,
)
from .forward import label_term
from .majority import mv_decide, mv_evaluate, mv_partition
from .solver import AeSolution, AlarmStatus, Policy, evaluate
from .surd import approx, real_part

Decider = Union[Callable[[str], str], Mapping[str, str]]


def clamp_point(point: EvaluationPoint) -> tuple[EvaluationPoint, bool]:
    """Real parts of the coordinates clipped to ``[0, 1]``; flag if anything moved."""
    moved = False
    out = []
    for v in point.flat():
        r = real_part(v)
        c = min(max(r, Fraction(0)), Fraction(1))
        if c != v:
            moved = True
        out.append(c)
    return EvaluationPoint.from_flat(out), moved


def estimate_partition(point: EvaluationPoint, counts: PatternCounts) -> ByTrueLabelCounts:
    """Model-implied by-label split of a test of size ``counts.q``.

    The point is clamped to ``[0, 1]`` first (see :func:`clamp_point`). Cells are
    exact; per-pattern sums equal ``q`` times the model frequency, which
    matches the observed count whenever the point reproduces the data.
    """
    point, _ = clamp_point(point)
    q = counts.q
    return ByTrueLabelCounts({lab: {p: q * label_term(point, p, lab) for p in PATTERNS} for lab in LABELS})


def _round_half_away(x) -> int:
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        sign = -1 if x < 0 else 1
        return sign * int(abs(x) + Fraction(1, 2))
    v = approx(x, 40)
    sign = -1 if v < 0 else 1
    return sign * int(abs(v) + 0.5)


def round_partition(partition: ByTrueLabelCounts, counts: PatternCounts) -> ByTrueLabelCounts:
    """Integer display form: round half away from zero, then fix each row's sum.

    When a rounded row does not add up to the observed count, the difference
    goes to the larger cell.
    """
    split = {lab: {} for lab in LABELS}
    for p in PATTERNS:
        na = _round_half_away(partition.cell(p, "a"))
        nb = _round_half_away(partition.cell(p, "b"))
        diff = counts[p] - (na + nb)
        if diff:
            if na >= nb:
                na += diff
            else:
                nb += diff
        split["a"][p], split["b"][p] = na, nb
    return ByTrueLabelCounts(split)


def decide(partition: ByTrueLabelCounts, pattern: str) -> str:
    """Label with the larger estimated count; ties go to the majority vote."""
    na, nb = partition.cell(pattern, "a"), partition.cell(pattern, "b")
    if na > nb:
        return "a"
    if nb > na:
        return "b"
    return mv_decide(pattern)


def decision_rule(partition: ByTrueLabelCounts) -> dict[str, str]:
    return {p: decide(partition, p) for p in PATTERNS}


def count_errors(decider: Decider, ground_truth: ByTrueLabelCounts) -> int:
    """Number of items mislabeled by ``decider`` on an integer ground truth."""
    ground_truth.check_ground_truth()
    choose = decider if callable(decider) else decider.__getitem__
    return int(sum(ground_truth.cell(p, other_label(choose(p))) for p in PATTERNS))


def enumerate_trios(classifier_ids: Iterable) -> list[tuple]:
    """All 3-subsets of the ensemble in lexicographic id order."""
    ids = sorted(set(classifier_ids))
    if len(ids) < 3:
        raise ConfigurationError(f"need at least 3 classifiers, got {len(ids)}")
    return list(itertools.combinations(ids, 3))


def ground_truth_point(gt: ByTrueLabelCounts) -> EvaluationPoint:
    from .synthesis import ground_truth_evaluation

    return ground_truth_evaluation(gt)


@dataclass(frozen=True)
class ComparisonReport:
    """AE vs MV vs ground truth for one trio on one test."""

    trio: tuple
    observed: PatternCounts
    alarm: AlarmStatus
    ae_solution: AeSolution
    ae_partition: Optional[ByTrueLabelCounts]
    mv_partition: ByTrueLabelCounts
    ae_point: Optional[EvaluationPoint]
    mv_point: EvaluationPoint
    clamped: bool
    ground_truth: Optional[ByTrueLabelCounts] = None
    gt_point: Optional[EvaluationPoint] = None
    gt_errors: Optional[int] = None
    ae_errors: Optional[int] = None
    mv_errors: Optional[int] = None
    ae_deviation: Optional[tuple] = None
    mv_deviation: Optional[tuple] = None
    notes: tuple[str, ...] = field(default=())

    def ae_decisions(self) -> dict[str, str]:
        """AE decision per pattern; falls back to MV when AE produced no point."""
        if self.ae_partition is None:
            return {p: mv_decide(p) for p in PATTERNS}
        return decision_rule(self.ae_partition)

    def ae_partition_rounded(self) -> Optional[ByTrueLabelCounts]:
        if self.ae_partition is None:
            return None
        return round_partition(self.ae_partition, self.observed)


def _deviation(est: Optional[EvaluationPoint], truth: EvaluationPoint) -> Optional[tuple]:
    if est is None:
        return None
    return tuple(
        None if (e is None or t is None) else e - t for e, t in zip(est.flat(), truth.flat())
    )


def compare_methods(
    counts: Optional[PatternCounts] = None,
    ground_truth: Optional[ByTrueLabelCounts] = None,
    policy: Policy = "better-than-random",
    trio: Sequence = ("0", "1", "2"),
) -> ComparisonReport:
    """Run AE and MV on a trio and, when truth is given, score both against it."""
    if counts is None:
        if ground_truth is None:
            raise ConfigurationError("need observed counts or a ground-truth partition")
        counts = project(ground_truth)
    elif ground_truth is not None and project(ground_truth) != counts:
        raise ConfigurationError("ground truth does not project onto the observed counts")

    sol = evaluate(counts, policy)
    notes = list(sol.notes)
    ae_point = sol.point
    clamped = False
    ae_part = None
    if ae_point is not None:
        _, clamped = clamp_point(ae_point)
        ae_part = estimate_partition(ae_point, counts)
        if clamped:
            notes.append("AE point clamped to [0, 1] before partition estimation")
    else:
        notes.append("no AE point; AE decisions fall back to majority vote")
    mv_part = mv_partition(counts)
    mv_point = mv_evaluate(frequencies(counts))

    report = dict(
        trio=tuple(trio),
        observed=counts,
        alarm=sol.alarm,
        ae_solution=sol,
        ae_partition=ae_part,
        mv_partition=mv_part,
        ae_point=ae_point,
        mv_point=mv_point,
        clamped=clamped,
    )
    if ground_truth is not None:
        gt_point = ground_truth_point(ground_truth)
        ae_rule = decision_rule(ae_part) if ae_part is not None else mv_decide
        report.update(
            ground_truth=ground_truth,
            gt_point=gt_point,
            gt_errors=count_errors(decision_rule(ground_truth), ground_truth),
            ae_errors=count_errors(ae_rule, ground_truth),
            mv_errors=count_errors(mv_decide, ground_truth),
            ae_deviation=_deviation(ae_point, gt_point),
            mv_deviation=_deviation(mv_point, gt_point),
        )
    return ComparisonReport(notes=tuple(notes), **report)


def accuracy_mae(est: Optional[EvaluationPoint], truth: EvaluationPoint) -> Optional[float]:
    """Mean absolute error over the six accuracies (real parts, as floats)."""
    if est is None:
        return None
    errs = []
    for e, t in zip(est.accuracies(), truth.accuracies()):
        if e is None or t is None:
            continue
        errs.append(abs(float(real_part(e)) - float(t)))
    return sum(errs) / len(errs) if errs else None


def per_classifier_summary(reports: Sequence[ComparisonReport], reducer=statistics.mean) -> dict:
    """Combine per-trio AE accuracy estimates into one value per classifier.

    An extension for ensembles larger than three: each classifier appears in
    several trios and this reduces its estimates (mean by default).
    """
    values: dict = {}
    for rep in reports:
        if rep.ae_point is None:
            continue
        for slot, cid in enumerate(rep.trio):
            for label in LABELS:
                v = rep.ae_point.acc(slot, label)
                values.setdefault((cid, label), []).append(float(real_part(v)))
    return {key: reducer(vs) for key, vs in sorted(values.items(), key=lambda kv: str(kv[0]))}


__all__ = [
    "ComparisonReport",
    "accuracy_mae",
    "clamp_point",
    "compare_methods",
    "count_errors",
    "decide",
    "decision_rule",
    "enumerate_trios",
    "estimate_partition",
    "per_classifier_summary",
    "round_partition",
]
