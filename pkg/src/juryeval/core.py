"""Domain types shared across the package.

Labels are the strings ``"a"`` and ``"b"``. A decision pattern is the string
of labels a trio assigned to one item, e.g. ``"aba"``; the canonical order of
the eight patterns follows the row order used in the by-true-label tables.

All counts are integers and all derived statistics are exact
:class:`~fractions.Fraction` values (or :class:`~juryeval.surd.Surd` values
when a square root could not be extracted).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Hashable, Iterable, Mapping, Optional, Sequence

LABELS: tuple[str, str] = ("a", "b")

PATTERNS: tuple[str, ...] = ("aaa", "aab", "aba", "baa", "bba", "bab", "abb", "bbb")

CLASSIFIERS: tuple[int, int, int] = (0, 1, 2)


class InputError(ValueError):
    """Malformed or inconsistent input data."""


class EmptyTestError(InputError):
    """Statistics requested for a test with no items."""


class ConfigurationError(ValueError):
    """Invalid parameters for an operation (trio sizes, correlation specs, ...)."""


def other_label(label: str) -> str:
    return "b" if label == "a" else "a"


def check_pattern(pattern: str, width: int = 3) -> str:
    if not isinstance(pattern, str) or len(pattern) != width or any(ch not in LABELS for ch in pattern):
        raise InputError(f"invalid decision pattern {pattern!r} (expected {width} of 'a'/'b')")
    return pattern


def all_patterns(width: int) -> list[str]:
    """Every pattern of ``width`` binary decisions, lexicographic."""
    return ["".join(p) for p in itertools.product(LABELS, repeat=width)]


@dataclass(frozen=True)
class PatternCounts:
    """Observed counts of the eight joint decisions of a trio.

    ``counts`` maps each canonical pattern to a non-negative integer; missing
    patterns are stored as zero.
    """

    counts: Mapping[str, int]

    def __post_init__(self):
        full = {p: 0 for p in PATTERNS}
        for pattern, n in self.counts.items():
            check_pattern(pattern)
            if int(n) != n or n < 0:
                raise InputError(f"count for {pattern!r} must be a non-negative integer, got {n!r}")
            full[pattern] = int(n)
        object.__setattr__(self, "counts", MappingProxyType(full))

    @classmethod
    def from_sequence(cls, values: Sequence[int]) -> PatternCounts:
        """Counts given in canonical pattern order."""
        if len(values) != len(PATTERNS):
            raise InputError(f"expected {len(PATTERNS)} counts, got {len(values)}")
        return cls(dict(zip(PATTERNS, values)))

    @property
    def q(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, pattern: str) -> int:
        return self.counts[pattern]

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(self.counts[p] for p in PATTERNS)

    def scaled(self, m: int) -> PatternCounts:
        return PatternCounts({p: n * m for p, n in self.counts.items()})

    def __eq__(self, other):
        if not isinstance(other, PatternCounts):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())


@dataclass(frozen=True)
class ByTrueLabelCounts:
    """Pattern counts split by true label.

    Holds integers for ground truth and exact rationals (or surds) for model
    estimates. ``per_label[label][pattern]`` is the number of items with true
    label ``label`` that received decision ``pattern``.
    """

    per_label: Mapping[str, Mapping[str, Any]]

    def __post_init__(self):
        full = {}
        for label in LABELS:
            cells = self.per_label.get(label, {})
            row = {p: 0 for p in PATTERNS}
            for pattern, n in cells.items():
                check_pattern(pattern)
                row[pattern] = n
            full[label] = MappingProxyType(row)
        unknown = set(self.per_label) - set(LABELS)
        if unknown:
            raise InputError(f"unknown true labels {sorted(unknown)}")
        object.__setattr__(self, "per_label", MappingProxyType(full))

    @classmethod
    def from_columns(cls, a: Sequence, b: Sequence) -> ByTrueLabelCounts:
        """Build from two columns in canonical pattern order."""
        if len(a) != len(PATTERNS) or len(b) != len(PATTERNS):
            raise InputError("each column needs one entry per pattern")
        return cls({"a": dict(zip(PATTERNS, a)), "b": dict(zip(PATTERNS, b))})

    def cell(self, pattern: str, label: str):
        return self.per_label[label][pattern]

    def column(self, label: str) -> tuple:
        return tuple(self.per_label[label][p] for p in PATTERNS)

    def total(self, label: str | None = None):
        labels = LABELS if label is None else (label,)
        return sum(self.per_label[lab][p] for lab in labels for p in PATTERNS)

    @property
    def is_integral(self) -> bool:
        return all(
            isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1)
            for label in LABELS
            for v in self.per_label[label].values()
        )

    def check_ground_truth(self) -> ByTrueLabelCounts:
        """Raise unless every cell is a non-negative integer."""
        for label in LABELS:
            for p, v in self.per_label[label].items():
                if not (isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1)) or v < 0:
                    raise InputError(f"ground-truth cell ({p}|{label}) must be a non-negative integer, got {v!r}")
        return self

    def __eq__(self, other):
        if not isinstance(other, ByTrueLabelCounts):
            return NotImplemented
        return all(self.column(lab) == other.column(lab) for lab in LABELS)

    def __hash__(self):
        return hash((self.column("a"), self.column("b")))


@dataclass(frozen=True)
class EvaluationPoint:
    """Prevalence of label ``a`` and the six per-label accuracies of a trio.

    ``acc_a[c]`` and ``acc_b[c]`` are classifier ``c``'s accuracy on items whose
    true label is ``a`` (resp. ``b``). Values are exact where possible; ``None``
    marks an accuracy that is undefined because its label never occurs.
    """

    p_a: Any
    acc_a: tuple
    acc_b: tuple

    def __post_init__(self):
        object.__setattr__(self, "acc_a", tuple(self.acc_a))
        object.__setattr__(self, "acc_b", tuple(self.acc_b))
        if len(self.acc_a) != 3 or len(self.acc_b) != 3:
            raise InputError("an evaluation point needs three accuracies per label")

    @classmethod
    def from_flat(cls, values: Sequence) -> EvaluationPoint:
        """``(p_a, pi_0a, pi_0b, pi_1a, pi_1b, pi_2a, pi_2b)``."""
        if len(values) != 7:
            raise InputError(f"expected 7 coordinates, got {len(values)}")
        return cls(values[0], values[1::2], values[2::2])

    @property
    def p_b(self):
        return 1 - self.p_a

    def acc(self, classifier: int, label: str):
        return self.acc_a[classifier] if label == "a" else self.acc_b[classifier]

    def flat(self) -> tuple:
        out = [self.p_a]
        for c in CLASSIFIERS:
            out += [self.acc_a[c], self.acc_b[c]]
        return tuple(out)

    def accuracies(self) -> tuple:
        return self.flat()[1:]

    def in_unit_cube(self) -> bool:
        """True when every coordinate is a real number in ``[0, 1]``."""
        from .surd import is_real

        for v in self.flat():
            if v is None or not is_real(v):
                return False
            if v < 0 or v > 1:
                return False
        return True


@dataclass(frozen=True)
class DecisionRecord:
    """One item's decisions by every classifier, plus its true label if known."""

    item_id: Hashable
    decisions: Mapping[str, str]
    true_label: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "decisions", MappingProxyType(dict(self.decisions)))
        for cid, lab in self.decisions.items():
            if lab not in LABELS:
                raise InputError(f"item {self.item_id!r}: classifier {cid!r} gave unknown label {lab!r}")
        if self.true_label is not None and self.true_label not in LABELS:
            raise InputError(f"item {self.item_id!r}: unknown true label {self.true_label!r}")


@dataclass(frozen=True)
class Aggregate:
    """Result of :func:`aggregate`: observed counts plus the optional truth split."""

    counts: PatternCounts
    by_label: Optional[ByTrueLabelCounts] = None
    trio: tuple = field(default=())


def project(by_label: ByTrueLabelCounts) -> PatternCounts:
    """Collapse a by-true-label split into observed pattern counts."""
    by_label.check_ground_truth()
    return PatternCounts({p: int(by_label.cell(p, "a") + by_label.cell(p, "b")) for p in PATTERNS})


def aggregate(records: Iterable[DecisionRecord], trio: Sequence[str]) -> Aggregate:
    """Tally per-item decisions of an ordered trio into pattern counts.

    The by-true-label split is filled only when every record carries a true
    label.
    """
    trio = tuple(trio)
    if len(trio) != 3:
        raise ConfigurationError(f"a trio needs exactly 3 classifiers, got {trio!r}")
    counts = {p: 0 for p in PATTERNS}
    split = {lab: {p: 0 for p in PATTERNS} for lab in LABELS}
    all_truth = True
    n = 0
    for rec in records:
        try:
            pattern = "".join(rec.decisions[c] for c in trio)
        except KeyError as exc:
            raise InputError(f"item {rec.item_id!r} has no decision from classifier {exc.args[0]!r}") from None
        counts[pattern] += 1
        if rec.true_label is None:
            all_truth = False
        else:
            split[rec.true_label][pattern] += 1
        n += 1
    by_label = ByTrueLabelCounts(split) if all_truth and n else None
    return Aggregate(PatternCounts(counts), by_label, trio)


def frequencies(counts: PatternCounts) -> dict[str, Fraction]:
    """Exact pattern frequencies ``n / q``."""
    q = counts.q
    if q == 0:
        raise EmptyTestError("cannot compute frequencies of an empty test")
    return {p: Fraction(counts[p], q) for p in PATTERNS}


@dataclass(frozen=True)
class Sketch:
    """Decision counts of an ensemble of any size on one test.

    Pattern keys are label strings in ``classifiers`` order. ``by_true_label``
    is present when ground truth is known; otherwise only ``patterns`` is.
    """

    classifiers: tuple
    patterns: Mapping[str, int]
    by_true_label: Optional[Mapping[str, Mapping[str, int]]] = None

    def __post_init__(self):
        ids = tuple(self.classifiers)
        if len(ids) < 3 or len(set(ids)) != len(ids):
            raise InputError(f"a sketch needs at least 3 distinct classifiers, got {ids!r}")
        object.__setattr__(self, "classifiers", ids)
        width = len(ids)
        pats = {p: 0 for p in all_patterns(width)}
        for p, n in self.patterns.items():
            check_pattern(p, width)
            if int(n) != n or n < 0:
                raise InputError(f"count for {p!r} must be a non-negative integer")
            pats[p] = int(n)
        object.__setattr__(self, "patterns", MappingProxyType(pats))
        if self.by_true_label is not None:
            split = {}
            for lab in LABELS:
                row = {p: 0 for p in all_patterns(width)}
                for p, n in self.by_true_label.get(lab, {}).items():
                    check_pattern(p, width)
                    if int(n) != n or n < 0:
                        raise InputError(f"count for ({p}|{lab}) must be a non-negative integer")
                    row[p] = int(n)
                split[lab] = MappingProxyType(row)
            for p in pats:
                if split["a"][p] + split["b"][p] != pats[p]:
                    raise InputError(f"by-true-label counts for {p!r} do not add up to the observed count")
            object.__setattr__(self, "by_true_label", MappingProxyType(split))

    @classmethod
    def from_by_true_label(cls, classifiers: Sequence, by_true_label: Mapping[str, Mapping[str, int]]) -> Sketch:
        width = len(classifiers)
        totals = {p: 0 for p in all_patterns(width)}
        for lab in by_true_label:
            for p, n in by_true_label[lab].items():
                check_pattern(p, width)
                totals[p] += n
        return cls(tuple(classifiers), totals, by_true_label)

    @classmethod
    def from_trio(cls, counts: PatternCounts, by_label: Optional[ByTrueLabelCounts] = None, classifiers=("0", "1", "2")) -> Sketch:
        truth = None if by_label is None else {lab: dict(by_label.per_label[lab]) for lab in LABELS}
        return cls(tuple(classifiers), dict(counts.counts), truth)

    @property
    def q(self) -> int:
        return sum(self.patterns.values())

    @property
    def has_truth(self) -> bool:
        return self.by_true_label is not None

    def trio_view(self, trio: Sequence) -> tuple[PatternCounts, Optional[ByTrueLabelCounts]]:
        """Marginalize onto three of the classifiers, in the order given."""
        try:
            slots = [self.classifiers.index(c) for c in trio]
        except ValueError:
            raise ConfigurationError(f"trio {tuple(trio)!r} not in sketch classifiers {self.classifiers!r}") from None
        if len(slots) != 3:
            raise ConfigurationError("a trio needs exactly 3 classifiers")

        def sub(p: str) -> str:
            return "".join(p[s] for s in slots)

        counts = {p: 0 for p in PATTERNS}
        for p, n in self.patterns.items():
            counts[sub(p)] += n
        truth = None
        if self.by_true_label is not None:
            truth = {lab: {p: 0 for p in PATTERNS} for lab in LABELS}
            for lab in LABELS:
                for p, n in self.by_true_label[lab].items():
                    truth[lab][sub(p)] += n
            truth = ByTrueLabelCounts(truth)
        return PatternCounts(counts), truth
