"""Observable moments of a trio's decisions.

Every statistic here is computed from the eight pattern frequencies and is
an exact rational. Classifiers are indexed 0, 1, 2 by their slot in the
pattern string.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .core import CLASSIFIERS, PATTERNS

PAIRS: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (1, 2))


def _pair_key(pair) -> tuple[int, int]:
    i, j = pair
    if i == j:
        raise ValueError("a pair needs two distinct classifiers")
    return (i, j) if i < j else (j, i)


def marginal_b(freqs: Mapping[str, Fraction], classifier: int) -> Fraction:
    """Frequency with which ``classifier`` voted ``b``."""
    return sum((freqs[p] for p in PATTERNS if p[classifier] == "b"), Fraction(0))


def marginal_a(freqs: Mapping[str, Fraction], classifier: int) -> Fraction:
    return sum((freqs[p] for p in PATTERNS if p[classifier] == "a"), Fraction(0))


def joint_bb(freqs: Mapping[str, Fraction], pair) -> Fraction:
    i, j = _pair_key(pair)
    return sum((freqs[p] for p in PATTERNS if p[i] == "b" and p[j] == "b"), Fraction(0))


def delta_pair(freqs: Mapping[str, Fraction], pair) -> Fraction:
    """Covariance of the two classifiers' ``b``-vote indicators."""
    i, j = _pair_key(pair)
    return joint_bb(freqs, (i, j)) - marginal_b(freqs, i) * marginal_b(freqs, j)


def delta_trio(freqs: Mapping[str, Fraction]) -> Fraction:
    """Third central moment of the three ``b``-vote indicators."""
    f = [marginal_b(freqs, c) for c in CLASSIFIERS]
    d01 = delta_pair(freqs, (0, 1))
    d02 = delta_pair(freqs, (0, 2))
    d12 = delta_pair(freqs, (1, 2))
    return freqs["bbb"] - (f[0] * f[1] * f[2] + f[0] * d12 + f[1] * d02 + f[2] * d01)


@dataclass(frozen=True)
class TrioMoments:
    f_b: tuple[Fraction, Fraction, Fraction]
    delta_pair: Mapping[tuple[int, int], Fraction]
    delta_trio: Fraction

    def pair(self, i: int, j: int) -> Fraction:
        return self.delta_pair[_pair_key((i, j))]

    def opposite_pair(self, classifier: int) -> Fraction:
        """Delta of the two classifiers other than ``classifier``."""
        j, k = (c for c in CLASSIFIERS if c != classifier)
        return self.pair(j, k)

    @property
    def pair_product(self) -> Fraction:
        return self.pair(0, 1) * self.pair(0, 2) * self.pair(1, 2)


def trio_moments(freqs: Mapping[str, Fraction]) -> TrioMoments:
    return TrioMoments(
        f_b=tuple(marginal_b(freqs, c) for c in CLASSIFIERS),
        delta_pair={pair: delta_pair(freqs, pair) for pair in PAIRS},
        delta_trio=delta_trio(freqs),
    )
