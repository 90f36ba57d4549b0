"""Algebraic evaluation: invert the generating polynomials.

Given the moments of an error-independent trio, the prevalence of label ``a``
satisfies

    A p^2 - A p + C = 0,   A = T^2 + 4 P,   C = P,

where ``P`` is the product of the three pair deltas and ``T`` the trio delta.
Its discriminant is ``A * T^2``, so the roots are rational exactly when ``A``
is a rational square. Each accuracy then follows from one linear equation.

The roots are carried exactly as elements of Q(sqrt(A)); rational roots come
back as :class:`~fractions.Fraction`, irrational or complex ones as
:class:`~juryeval.surd.Surd`. Whether or not the roots are rational, both
candidate points are substituted back into the generating polynomials.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from .core import CLASSIFIERS, EvaluationPoint, PatternCounts, frequencies
from .forward import generating_set
from .moments import TrioMoments, trio_moments
from .surd import Surd, rational_sqrt, real_part

log = logging.getLogger(__name__)


class AlarmKind(str, Enum):
    CLEAN_RATIONAL = "clean_rational"
    IRRATIONAL_REAL = "irrational_real"
    COMPLEX = "complex"
    OUT_OF_RANGE = "out_of_range"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class AlarmStatus:
    kind: AlarmKind
    detail: str = ""

    @property
    def fired(self) -> bool:
        """True for the statuses that signal correlated errors."""
        return self.kind in (AlarmKind.IRRATIONAL_REAL, AlarmKind.COMPLEX, AlarmKind.OUT_OF_RANGE)


class DegenerateMomentsError(ArithmeticError):
    """A divisor required by the inversion vanished."""


@dataclass(frozen=True)
class Quadratic:
    a: Fraction
    b: Fraction
    c: Fraction

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    @property
    def discriminant(self) -> Fraction:
        return self.b * self.b - 4 * self.a * self.c


def prevalence_quadratic(m: TrioMoments) -> Quadratic:
    """Coefficients ``(A, B, C)`` of the prevalence quadratic; ``B == -A``."""
    t = m.delta_trio
    p = m.pair_product
    a = t * t + 4 * p
    return Quadratic(a, -a, p)


@dataclass(frozen=True)
class PrevalenceRoots:
    roots: Optional[tuple]
    kind: AlarmKind
    detail: str = ""


def solve_prevalence(quad: Quadratic) -> PrevalenceRoots:
    """Both roots of the prevalence quadratic, exact, smaller real part first.

    ``kind`` is ``CLEAN_RATIONAL`` (pending a range check), ``IRRATIONAL_REAL``,
    ``COMPLEX`` or ``DEGENERATE``.
    """
    a, b, c = quad.as_tuple()
    if a == 0:
        return PrevalenceRoots(None, AlarmKind.DEGENERATE, "leading coefficient A vanishes")
    disc = quad.discriminant
    # p = 1/2 -/+ sqrt(disc) / (2A)
    half = Fraction(1, 2)
    if disc == 0:
        return PrevalenceRoots((half, half), AlarmKind.CLEAN_RATIONAL, "double root")
    root = rational_sqrt(disc)
    if root is not None:
        r = root / (2 * abs(a))
        return PrevalenceRoots((half - r, half + r), AlarmKind.CLEAN_RATIONAL)
    # disc = A * T^2 for the prevalence quadratic; sqrt(A) keeps the radicand small
    t = rational_sqrt(disc / a) if disc / a >= 0 else None
    s = Surd.make(0, t / (2 * abs(a)), a) if t is not None and a > 0 else Surd.make(0, 1 / (2 * a), disc)
    lo, hi = half - s, half + s
    if disc < 0:
        if lo.coeff > 0:
            lo, hi = hi, lo
        return PrevalenceRoots((lo, hi), AlarmKind.COMPLEX, "negative discriminant")
    if lo > hi:
        lo, hi = hi, lo
    return PrevalenceRoots((lo, hi), AlarmKind.IRRATIONAL_REAL, "discriminant is not a rational square")


def accuracies_given_prevalence(m: TrioMoments, p_a) -> EvaluationPoint:
    """Solve the six linear accuracy equations for a chosen prevalence root.

    For classifier ``i`` with opposite pair ``(j, k)``::

        D_jk T pi_{i,a} = D_jk T (1 - f_i) - A (1 - p_a) + 2P
        D_jk T pi_{i,b} = D_jk T f_i + A p_a - 2P

    Raises :class:`DegenerateMomentsError` when ``D_jk * T`` vanishes.
    """
    t = m.delta_trio
    p = m.pair_product
    a = t * t + 4 * p
    acc_a, acc_b = [], []
    for i in CLASSIFIERS:
        denom = m.opposite_pair(i) * t
        if denom == 0:
            which = "trio delta" if t == 0 else f"pair delta opposite classifier {i}"
            raise DegenerateMomentsError(f"{which} is zero")
        f = m.f_b[i]
        acc_a.append((1 - f) - (a * (1 - p_a) - 2 * p) / denom)
        acc_b.append(f + (a * p_a - 2 * p) / denom)
    return EvaluationPoint(p_a, acc_a, acc_b)


def _symmetric_branch(m: TrioMoments) -> Optional[tuple[EvaluationPoint, EvaluationPoint]]:
    """Candidates for the ``T == 0`` double root ``p_a = 1/2``.

    There ``d_i = pi_{i,a} + pi_{i,b} - 1`` satisfies ``d_i d_j = 4 D_ij``, so
    ``d_i = +/- 2 sqrt(P) / D_jk`` with a common sign.
    """
    p = m.pair_product
    if p <= 0:
        return None
    sqrt_p = Surd.sqrt(p)
    half = Fraction(1, 2)
    cands = []
    for sign in (1, -1):
        acc_a, acc_b = [], []
        for i in CLASSIFIERS:
            d = sign * 2 * sqrt_p / m.opposite_pair(i)
            f = m.f_b[i]
            acc_a.append(1 - f + d / 2)
            acc_b.append(f + d / 2)
        cands.append(EvaluationPoint(half, acc_a, acc_b))
    return cands[0], cands[1]


def substitution_residual(point: EvaluationPoint, freqs) -> dict:
    """Generating polynomials at ``point`` minus the observed frequencies."""
    model = generating_set(point)
    return {pat: model[pat] - freqs[pat] for pat in freqs}


def reproduces(point: EvaluationPoint, freqs) -> bool:
    return all(r == 0 for r in substitution_residual(point, freqs).values())


# -- selection -----------------------------------------------------------------

Policy = Union[str, int]


def _count_better_than_random(point: EvaluationPoint) -> int:
    return sum(1 for v in point.accuracies() if real_part(v) > Fraction(1, 2))


def select_candidate(candidates, policy: Policy = "better-than-random", mv_prevalence=None) -> tuple[int, bool]:
    """Pick which of the two candidates to report.

    ``better-than-random`` prefers the candidate with more accuracies above
    1/2; ties go to the candidate whose prevalence is closer to the
    majority-vote estimate, then to the smaller prevalence (flagged ambiguous).
    ``low-prevalence`` takes the smaller prevalence. An integer (or
    ``"index:N"``) selects directly. Candidates are ordered smaller prevalence
    first. Returns ``(index, ambiguous)``.
    """
    if isinstance(policy, str) and policy.startswith("index:"):
        policy = int(policy.split(":", 1)[1])
    if isinstance(policy, int):
        if policy not in (0, 1):
            raise ValueError("candidate index must be 0 or 1")
        return policy, False
    if policy == "low-prevalence":
        return 0, False
    if policy != "better-than-random":
        raise ValueError(f"unknown selection policy {policy!r}")
    votes = [_count_better_than_random(c) for c in candidates]
    if votes[0] != votes[1]:
        return (0 if votes[0] > votes[1] else 1), False
    if mv_prevalence is not None:
        dist = [abs(real_part(c.p_a) - mv_prevalence) for c in candidates]
        if dist[0] != dist[1]:
            return (0 if dist[0] < dist[1] else 1), False
    return 0, True


# -- top level -----------------------------------------------------------------


@dataclass(frozen=True)
class AeSolution:
    """Both candidate evaluations of a trio, the reported one, and the alarm."""

    candidates: Optional[tuple[EvaluationPoint, EvaluationPoint]]
    selected: Optional[int]
    alarm: AlarmStatus
    quadratic: Quadratic
    moments: TrioMoments
    ambiguous: bool = False
    consistent: bool = False
    notes: tuple[str, ...] = field(default=())

    @property
    def point(self) -> Optional[EvaluationPoint]:
        if self.candidates is None or self.selected is None:
            return None
        return self.candidates[self.selected]

    @property
    def conjugate(self) -> Optional[EvaluationPoint]:
        if self.candidates is None or self.selected is None:
            return None
        return self.candidates[1 - self.selected]

    @property
    def in_range(self) -> bool:
        return self.point is not None and self.point.in_unit_cube()


def evaluate(counts: PatternCounts, policy: Policy = "better-than-random") -> AeSolution:
    """Algebraic evaluation of a trio from its observed pattern counts.

    Never raises on bad moments; degenerate and irrational outcomes are
    reported through ``alarm``.
    """
    from .majority import mv_prevalence

    freqs = frequencies(counts)
    m = trio_moments(freqs)
    quad = prevalence_quadratic(m)
    mv_p = mv_prevalence(freqs)
    notes = []

    zero_pairs = [pair for pair, d in m.delta_pair.items() if d == 0]
    if quad.a == 0 or zero_pairs:
        detail = f"zero pair deltas {zero_pairs}" if zero_pairs else "leading coefficient A vanishes"
        return AeSolution(None, None, AlarmStatus(AlarmKind.DEGENERATE, detail), quad, m)

    if m.delta_trio == 0:
        cands = _symmetric_branch(m)
        status = AlarmStatus(AlarmKind.DEGENERATE, "trio delta is zero; accuracy equations are singular")
        if cands is None:
            return AeSolution(None, None, status, quad, m)
        ok = all(reproduces(c, freqs) for c in cands)
        notes.append("double root p_a = 1/2 resolved by the symmetric branch")
        idx, amb = select_candidate(cands, policy, mv_p)
        return AeSolution(cands, idx, status, quad, m, amb, ok, tuple(notes))

    roots = solve_prevalence(quad)
    cands = tuple(accuracies_given_prevalence(m, r) for r in roots.roots)
    consistent = all(reproduces(c, freqs) for c in cands)
    if not consistent:
        # the closed forms are exact algebra; a failure here is a bug, not data
        log.error("candidate points do not reproduce the observed frequencies")
        notes.append("substitution check failed")

    kind, detail = roots.kind, roots.detail
    if kind is AlarmKind.CLEAN_RATIONAL and not all(c.in_unit_cube() for c in cands):
        kind, detail = AlarmKind.OUT_OF_RANGE, "rational candidate outside [0, 1]^7"
    if kind is AlarmKind.CLEAN_RATIONAL:
        detail = "rational solution: consistent with, not proof of, error independence"
    idx, amb = select_candidate(cands, policy, mv_p)
    return AeSolution(cands, idx, AlarmStatus(kind, detail), quad, m, amb, consistent, tuple(notes))


__all__ = [
    "AeSolution",
    "AlarmKind",
    "AlarmStatus",
    "DegenerateMomentsError",
    "Quadratic",
    "accuracies_given_prevalence",
    "evaluate",
    "prevalence_quadratic",
    "reproduces",
    "select_candidate",
    "solve_prevalence",
]
