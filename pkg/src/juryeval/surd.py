"""Exact arithmetic in a quadratic field Q(sqrt(d)).

Prevalence roots of the evaluation quadratic live in Q(sqrt(A)) where ``A``
is a rational built from the observed moments. Every accuracy is linear in
the prevalence, so the whole evaluation point lives in the same field and
can be substituted back into the generating polynomials without rounding.

A :class:`Surd` is ``rational + coeff * sqrt(radicand)`` with an integer,
non-square radicand. Negative radicands represent complex numbers.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

import mpmath

Exact = Union[int, Fraction, "Surd"]


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Return the exact square root of a non-negative rational, or None.

    The fraction is already in lowest terms, so it is a perfect square iff
    its numerator and denominator both are.
    """
    x = Fraction(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class Surd:
    """An element ``rational + coeff * sqrt(radicand)`` of a quadratic field.

    Instances are immutable. Construction normalizes the radicand to an
    integer (``sqrt(n/m) = sqrt(n*m)/m``) and collapses to a plain
    :class:`~fractions.Fraction` through :func:`make` when the square root
    turns out to be rational.
    """

    __slots__ = ("rational", "coeff", "radicand")

    def __init__(self, rational, coeff, radicand: int):
        self.rational = Fraction(rational)
        self.coeff = Fraction(coeff)
        self.radicand = int(radicand)

    @classmethod
    def make(cls, rational, coeff, radicand) -> Exact:
        """Build ``rational + coeff*sqrt(radicand)``, simplifying when possible."""
        rational = Fraction(rational)
        coeff = Fraction(coeff)
        radicand = Fraction(radicand)
        if coeff == 0 or radicand == 0:
            return rational
        # sqrt(n/m) = sqrt(n*m) / m
        n, m = radicand.numerator, radicand.denominator
        radicand_int = n * m
        coeff = coeff / m
        square, radicand_int = _split_square(radicand_int)
        coeff = coeff * square
        root = rational_sqrt(Fraction(abs(radicand_int)))
        if root is not None:
            if radicand_int > 0:
                return rational + coeff * root
            # pure imaginary with a rational magnitude; keep i = sqrt(-1)
            coeff = coeff * root
            radicand_int = -1
        return cls(rational, coeff, radicand_int)

    @classmethod
    def sqrt(cls, x) -> Exact:
        """Exact square root of a rational (complex when ``x < 0``)."""
        return cls.make(0, 1, Fraction(x))

    # -- structure -----------------------------------------------------------

    @property
    def is_real(self) -> bool:
        return self.radicand > 0

    def conjugate(self) -> Surd:
        return Surd(self.rational, -self.coeff, self.radicand)

    def norm(self) -> Fraction:
        """Field norm ``x * conj(x)``, always rational."""
        return self.rational**2 - self.coeff**2 * self.radicand

    def _coerce(self, other) -> Surd | None:
        if isinstance(other, Surd):
            if other.radicand != self.radicand:
                raise ValueError(
                    f"cannot combine sqrt({self.radicand}) with sqrt({other.radicand})"
                )
            return other
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return Surd(other, 0, self.radicand)
        return None

    @staticmethod
    def _wrap(rational, coeff, radicand) -> Exact:
        if coeff == 0:
            return Fraction(rational)
        return Surd(rational, coeff, radicand)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.rational + o.rational, self.coeff + o.coeff, self.radicand)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.rational, -self.coeff, self.radicand)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.rational - o.rational, self.coeff - o.coeff, self.radicand)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        r = self.rational * o.rational + self.coeff * o.coeff * self.radicand
        c = self.rational * o.coeff + self.coeff * o.rational
        return self._wrap(r, c, self.radicand)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.coeff == 0:
            if o.rational == 0:
                raise ZeroDivisionError("Surd division by zero")
            return self._wrap(self.rational / o.rational, self.coeff / o.rational, self.radicand)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("Surd division by zero")
        num = self * o.conjugate()
        if isinstance(num, Fraction):
            return num / n
        return self._wrap(num.rational / n, num.coeff / n, self.radicand)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result: Exact = Fraction(1)
        for _ in range(exponent):
            result = self * result
        return result

    # -- comparison ----------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of a real surd."""
        if not self.is_real:
            raise ValueError("complex Surd has no sign")
        a, b = self.rational, self.coeff
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sa == sb or sa == 0:
            return sb if sb else sa
        if sb == 0:
            return sa
        # opposite signs: compare a^2 against b^2 * d (never equal, d non-square)
        return sa if a * a > b * b * self.radicand else sb

    def _cmp(self, other) -> int:
        diff = self - other
        if isinstance(diff, Fraction):
            return (diff > 0) - (diff < 0)
        return diff.sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        if isinstance(other, Surd):
            if other.radicand == self.radicand:
                return self.rational == other.rational and self.coeff == other.coeff
            # distinct non-square radicands: equal only if the irrational parts
            # coincide, i.e. b1^2 d1 == b2^2 d2 with matching signs
            return (
                self.rational == other.rational
                and (self.coeff > 0) == (other.coeff > 0)
                and (self.radicand > 0) == (other.radicand > 0)
                and self.coeff**2 * self.radicand == other.coeff**2 * other.radicand
            )
        if isinstance(other, (int, Fraction)):
            return False  # coeff != 0 by construction
        if isinstance(other, float):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.rational, self.coeff, self.radicand))

    # -- conversion ----------------------------------------------------------

    def approx(self, digits: int = 50):
        """High-precision mpmath value (``mpf`` or ``mpc``)."""
        with mpmath.workdps(digits + 5):
            root = mpmath.sqrt(mpmath.mpf(self.radicand))
            val = mpmath.mpf(self.rational.numerator) / self.rational.denominator + (
                mpmath.mpf(self.coeff.numerator) / self.coeff.denominator
            ) * root
            return +val

    def __float__(self) -> float:
        if not self.is_real:
            raise TypeError("complex Surd cannot be converted to float")
        return float(self.approx(30))

    def __complex__(self) -> complex:
        return complex(self.approx(30))

    def __repr__(self) -> str:
        return f"Surd({self.rational}, {self.coeff}, {self.radicand})"

    def __str__(self) -> str:
        return format_exact(self)


def _split_square(n: int, bound: int = 1000) -> tuple[int, int]:
    """Write ``n = s**2 * r`` pulling out square factors of primes below ``bound``.

    Full factorization is out of reach for the radicands seen here, so larger
    square factors may remain; that only affects presentation.
    """
    sign = -1 if n < 0 else 1
    n = abs(n)
    root = math.isqrt(n)
    if root * root == n:
        return root, sign
    square = 1
    for p in (2, *range(3, bound, 2)):
        pp = p * p
        if pp > n:
            break
        while n % pp == 0:
            n //= pp
            square *= p
    return square, sign * n


def format_exact(x) -> str:
    """Serialize an exact value: ``"n/d"`` or ``"a +/- b*sqrt(d)"``."""
    if isinstance(x, Surd):
        op = "-" if x.coeff < 0 else "+"
        return f"{_frac_str(x.rational)} {op} {_frac_str(abs(x.coeff))}*sqrt({x.radicand})"
    return _frac_str(Fraction(x))


_SURD_RE = re.compile(r"^(\S+) ([+-]) (\S+)\*sqrt\((-?\d+)\)$")


def parse_exact(text: str) -> Exact:
    """Inverse of :func:`format_exact`."""
    text = text.strip()
    match = _SURD_RE.match(text)
    if match:
        rational, op, coeff, radicand = match.groups()
        coeff = Fraction(coeff) if op == "+" else -Fraction(coeff)
        return Surd(Fraction(rational), coeff, int(radicand))
    return Fraction(text)


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def approx(x, digits: int = 50):
    """mpmath approximation of any exact or float value."""
    if isinstance(x, Surd):
        return x.approx(digits)
    with mpmath.workdps(digits + 5):
        if isinstance(x, Fraction):
            return +(mpmath.mpf(x.numerator) / x.denominator)
        return +mpmath.mpmathify(x)


def real_part(x):
    """Real component of an exact value (identity for rationals and real surds)."""
    if isinstance(x, Surd) and not x.is_real:
        return x.rational
    return x


def is_real(x) -> bool:
    return not (isinstance(x, Surd) and not x.is_real)
