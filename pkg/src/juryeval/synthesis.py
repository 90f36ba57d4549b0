"""Synthetic tests and ground-truth statistics.

Samplers draw a true label per item and a correctness draw per classifier.
Error independence holds by construction in :func:`sample_independent`;
:func:`sample_correlated` breaks it with a shared-draw mixture: for a targeted
pair ``(i, j)`` and label ``l``, with probability ``rho`` classifier ``j``
reuses classifier ``i``'s uniform draw on a true-``l`` item (``1 - u`` when
``rho < 0``). With accuracies ``p_i, p_j`` this gives an expected error
correlation of ``rho * (min(p_i, p_j) - p_i p_j)`` for ``rho > 0``.

Ground-truth statistics are exact rationals computed from by-true-label
counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import numpy as np

from .core import (
    CLASSIFIERS,
    LABELS,
    PATTERNS,
    ByTrueLabelCounts,
    ConfigurationError,
    DecisionRecord,
    EvaluationPoint,
    Sketch,
    all_patterns,
)


@dataclass(frozen=True)
class CorrelationSpec:
    """Shared-draw mixture weights, keyed by ``(i, j, label)`` with ``i < j``."""

    rho: Mapping[tuple, float] = field(default_factory=dict)

    def __post_init__(self):
        norm = {}
        for key, r in self.rho.items():
            if len(key) != 3:
                raise ConfigurationError(f"correlation keys are (i, j, label), got {key!r}")
            i, j, label = key
            if i == j or label not in LABELS:
                raise ConfigurationError(f"bad correlation key {key!r}")
            if not -1 <= float(r) <= 1:
                raise ConfigurationError(f"mixture weight must be in [-1, 1], got {r}")
            norm[(min(i, j), max(i, j), label)] = r
        object.__setattr__(self, "rho", norm)

    @classmethod
    def uniform(cls, rho: float, pairs: Sequence[tuple] = ((0, 1), (0, 2), (1, 2)), labels=LABELS) -> CorrelationSpec:
        return cls({(i, j, lab): rho for i, j in pairs for lab in labels})

    @classmethod
    def from_targets(cls, point: EvaluationPoint, targets: Mapping[tuple, float]) -> CorrelationSpec:
        """Mixture weights that hit the requested pair correlations in expectation.

        Raises :class:`ConfigurationError` when a target is beyond what the
        shared-draw mechanism (or any pair of indicators) can reach.
        """
        rho = {}
        for (i, j, label), gamma in targets.items():
            gamma = float(gamma)
            if abs(gamma) > 0.25:
                raise ConfigurationError(f"|correlation| cannot exceed 1/4, got {gamma}")
            pi, pj = float(point.acc(i, label)), float(point.acc(j, label))
            limit = max_pair_correlation(pi, pj, positive=gamma >= 0)
            if gamma == 0:
                rho[i, j, label] = 0.0
                continue
            if limit == 0 or abs(gamma) > abs(limit) + 1e-15:
                raise ConfigurationError(
                    f"target {gamma} for pair ({i}, {j}) on label {label} is unreachable (limit {limit})"
                )
            r = gamma / limit
            rho[i, j, label] = r if gamma > 0 else -r
        return cls(rho)

    @property
    def is_independent(self) -> bool:
        return all(r == 0 for r in self.rho.values())


def max_pair_correlation(pi: float, pj: float, positive: bool = True) -> float:
    """Correlation reached by a fully shared (or antithetic) draw."""
    if positive:
        return min(pi, pj) - pi * pj
    return max(0.0, pi + pj - 1) - pi * pj


def expected_pair_correlation(point: EvaluationPoint, spec: CorrelationSpec, pair, label: str) -> float:
    """Expected error correlation of a pair under ``spec`` (exact for one rule per item)."""
    i, j = sorted(pair)
    r = spec.rho.get((i, j, label), 0.0)
    pi, pj = float(point.acc(i, label)), float(point.acc(j, label))
    return abs(r) * max_pair_correlation(pi, pj, positive=r >= 0)


# -- sampling ------------------------------------------------------------------


def _draw(p_a: float, acc_a, acc_b, q: int, rng: np.random.Generator, rho: Mapping[tuple, float]):
    """Return ``(truth_is_b, votes_b)`` boolean arrays of shapes (q,) and (q, n)."""
    acc_a = np.asarray(acc_a, dtype=float)
    acc_b = np.asarray(acc_b, dtype=float)
    truth_b = rng.random(q) >= p_a
    u = rng.random((q, len(acc_a)))
    for (i, j, label), r in sorted(rho.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2])):
        if r == 0:
            continue
        on_label = truth_b if label == "b" else ~truth_b
        mask = on_label & (rng.random(q) < abs(float(r)))
        u[mask, j] = u[mask, i] if r > 0 else 1.0 - u[mask, i]
    acc = np.where(truth_b[:, None], acc_b[None, :], acc_a[None, :])
    correct = u < acc
    votes_b = np.where(correct, truth_b[:, None], ~truth_b[:, None])
    return truth_b, votes_b


def _tally(truth_b: np.ndarray, votes_b: np.ndarray) -> dict:
    n = votes_b.shape[1]
    weights = 1 << np.arange(n - 1, -1, -1)
    codes = votes_b.astype(np.int64) @ weights
    patterns = all_patterns(n)  # lexicographic == binary order with a=0, b=1
    split = {}
    for label, mask in (("a", ~truth_b), ("b", truth_b)):
        hist = np.bincount(codes[mask], minlength=2**n)
        split[label] = {patterns[k]: int(hist[k]) for k in range(2**n)}
    return split


def _records(truth_b, votes_b, classifiers) -> list[DecisionRecord]:
    out = []
    for idx in range(len(truth_b)):
        decisions = {cid: ("b" if votes_b[idx, c] else "a") for c, cid in enumerate(classifiers)}
        out.append(DecisionRecord(idx, decisions, "b" if truth_b[idx] else "a"))
    return out


def _check_point(p_a, acc_a, acc_b):
    for v in (p_a, *acc_a, *acc_b):
        if not 0 <= float(v) <= 1:
            raise ConfigurationError(f"probabilities must lie in [0, 1], got {v}")


def sample_independent(point: EvaluationPoint, q: int, seed: Optional[int] = None, with_records: bool = False):
    """Draw a ground-truth partition from an error-independent trio.

    Returns a :class:`ByTrueLabelCounts`, or ``(counts, records)`` when
    ``with_records`` is set. Bit-reproducible for a fixed seed.
    """
    return sample_correlated(point, q, CorrelationSpec(), seed, with_records)


def sample_correlated(
    point: EvaluationPoint,
    q: int,
    spec: CorrelationSpec,
    seed: Optional[int] = None,
    with_records: bool = False,
):
    """Like :func:`sample_independent` with shared-draw correlations injected."""
    if q < 1:
        raise ConfigurationError("test size must be positive")
    _check_point(point.p_a, point.acc_a, point.acc_b)
    for (i, j, _label) in spec.rho:
        if i not in CLASSIFIERS or j not in CLASSIFIERS:
            raise ConfigurationError(f"pair ({i}, {j}) is not in a trio")
    rng = np.random.default_rng(seed)
    truth_b, votes_b = _draw(float(point.p_a), [float(x) for x in point.acc_a], [float(x) for x in point.acc_b], q, rng, spec.rho)
    gt = ByTrueLabelCounts(_tally(truth_b, votes_b))
    if with_records:
        return gt, _records(truth_b, votes_b, ("0", "1", "2"))
    return gt


def sample_ensemble(
    p_a: float,
    acc_a: Sequence[float],
    acc_b: Sequence[float],
    q: int,
    seed: Optional[int] = None,
    spec: Optional[CorrelationSpec] = None,
    classifiers: Optional[Sequence[str]] = None,
    with_records: bool = False,
):
    """Sample an ensemble of any size; returns a :class:`Sketch` (and records)."""
    if len(acc_a) != len(acc_b) or len(acc_a) < 3:
        raise ConfigurationError("need matching accuracy lists for at least 3 classifiers")
    if q < 1:
        raise ConfigurationError("test size must be positive")
    _check_point(p_a, acc_a, acc_b)
    classifiers = tuple(classifiers or (str(c + 1) for c in range(len(acc_a))))
    rho = {} if spec is None else spec.rho
    for (i, j, _label) in rho:
        if not (0 <= i < len(acc_a) and 0 <= j < len(acc_a)):
            raise ConfigurationError(f"pair ({i}, {j}) out of range")
    rng = np.random.default_rng(seed)
    truth_b, votes_b = _draw(float(p_a), acc_a, acc_b, q, rng, rho)
    sketch = Sketch.from_by_true_label(classifiers, _tally(truth_b, votes_b))
    if with_records:
        return sketch, _records(truth_b, votes_b, classifiers)
    return sketch


# -- ground-truth statistics -----------------------------------------------------


def label_total(gt: ByTrueLabelCounts, label: str):
    return sum(gt.cell(p, label) for p in PATTERNS)


def ground_truth_evaluation(gt: ByTrueLabelCounts, undefined_as_zero: bool = False) -> EvaluationPoint:
    """Exact prevalence and per-label accuracies of a known partition.

    Accuracies on a label with no items are ``None`` unless
    ``undefined_as_zero`` is set, which reproduces the convention of defining
    them as 0.
    """
    q = gt.total()
    if q == 0:
        raise ConfigurationError("empty ground truth")
    totals = {lab: label_total(gt, lab) for lab in LABELS}
    acc = {}
    for label in LABELS:
        for c in CLASSIFIERS:
            if totals[label] == 0:
                acc[c, label] = Fraction(0) if undefined_as_zero else None
            else:
                hits = sum(gt.cell(p, label) for p in PATTERNS if p[c] == label)
                acc[c, label] = Fraction(hits) / totals[label]
    return EvaluationPoint(
        Fraction(totals["a"]) / q,
        tuple(acc[c, "a"] for c in CLASSIFIERS),
        tuple(acc[c, "b"] for c in CLASSIFIERS),
    )


def _correct_mean(gt, label, classifiers, total):
    return Fraction(sum(gt.cell(p, label) for p in PATTERNS if all(p[c] == label for c in classifiers))) / total


def error_correlation_pair(gt: ByTrueLabelCounts, pair, label: str) -> Optional[Fraction]:
    """Covariance of two classifiers' correctness on true-``label`` items.

    ``None`` when the label never occurs.
    """
    i, j = pair
    total = label_total(gt, label)
    if total == 0:
        return None
    pi = _correct_mean(gt, label, (i,), total)
    pj = _correct_mean(gt, label, (j,), total)
    return _correct_mean(gt, label, (i, j), total) - pi * pj


def error_correlation_trio(gt: ByTrueLabelCounts, label: str) -> Optional[Fraction]:
    """Third central moment of the three correctness indicators on ``label`` items."""
    total = label_total(gt, label)
    if total == 0:
        return None
    m1 = [_correct_mean(gt, label, (c,), total) for c in CLASSIFIERS]
    m01 = _correct_mean(gt, label, (0, 1), total)
    m02 = _correct_mean(gt, label, (0, 2), total)
    m12 = _correct_mean(gt, label, (1, 2), total)
    m012 = _correct_mean(gt, label, (0, 1, 2), total)
    return m012 - m1[0] * m12 - m1[1] * m02 - m1[2] * m01 + 2 * m1[0] * m1[1] * m1[2]


def error_correlations(gt: ByTrueLabelCounts) -> dict:
    """All pair and trio correlations keyed ``(i, j, label)`` / ``("trio", label)``."""
    out = {}
    for label in LABELS:
        for pair in ((0, 1), (0, 2), (1, 2)):
            out[(*pair, label)] = error_correlation_pair(gt, pair, label)
        out[("trio", label)] = error_correlation_trio(gt, label)
    return out


# -- exact expectations under the shared-draw mechanism ----------------------------


def _interval_measure(conditions) -> Fraction:
    """Lebesgue measure of ``{u in [0,1): all conditions hold}``.

    Each condition is ``(threshold, below)`` meaning ``u < threshold`` when
    ``below`` else ``u >= threshold``.
    """
    lo, hi = Fraction(0), Fraction(1)
    for t, below in conditions:
        if below:
            hi = min(hi, t)
        else:
            lo = max(lo, t)
    return max(Fraction(0), hi - lo)


def _correct_pattern_probs(acc: Sequence[Fraction], rules: Sequence[tuple]) -> dict:
    """Exact distribution of the correctness vector for one true label.

    ``rules`` are ``(i, j, rho)`` applied in order, as in the sampler.
    """
    n = len(acc)
    out: dict = {}
    for fired in range(2 ** len(rules)):
        weight = Fraction(1)
        # each classifier's draw is (source uniform index, flipped)
        source = [(c, False) for c in range(n)]
        for r, (i, j, rho) in enumerate(rules):
            if fired >> r & 1:
                weight *= abs(rho)
                src, flip = source[i]
                source[j] = (src, flip != (rho < 0))
            else:
                weight *= 1 - abs(rho)
        if weight == 0:
            continue
        for correct in range(2**n):
            prob = weight
            for src in set(s for s, _ in source):
                conds = []
                for c in range(n):
                    s, flip = source[c]
                    if s != src:
                        continue
                    is_correct = bool(correct >> (n - 1 - c) & 1)
                    # correct iff u < p (or 1 - u < p, i.e. u > 1 - p, when flipped)
                    if not flip:
                        conds.append((acc[c], is_correct))
                    else:
                        conds.append((1 - acc[c], not is_correct))
                prob *= _interval_measure(conds)
                if prob == 0:
                    break
            if prob:
                out[correct] = out.get(correct, Fraction(0)) + prob
    return out


def expected_correlated_partition(point: EvaluationPoint, spec: CorrelationSpec, q: int = 1) -> ByTrueLabelCounts:
    """Exact expected by-label counts of :func:`sample_correlated`.

    Mixture weights are converted to fractions; pass rationals as
    :class:`~fractions.Fraction` (or floats with exact binary values) for an
    exact result. With an empty spec this equals the forward-map expectation.
    """
    split = {}
    for label in LABELS:
        prior = Fraction(point.p_a) if label == "a" else 1 - Fraction(point.p_a)
        acc = [Fraction(point.acc(c, label)) for c in CLASSIFIERS]
        rules = [
            (i, j, Fraction(r))
            for (i, j, lab), r in sorted(spec.rho.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2]))
            if lab == label and r != 0
        ]
        probs = _correct_pattern_probs(acc, rules)
        row = {p: Fraction(0) for p in PATTERNS}
        for correct, pr in probs.items():
            pattern = "".join(
                label if (correct >> (2 - c) & 1) else ("b" if label == "a" else "a") for c in CLASSIFIERS
            )
            row[pattern] += q * prior * pr
        split[label] = row
    return ByTrueLabelCounts(split)
