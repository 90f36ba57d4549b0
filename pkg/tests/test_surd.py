from fractions import Fraction as F

import mpmath
import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from juryeval.surd import Surd, approx, format_exact, is_real, parse_exact, rational_sqrt, real_part

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=30)
radicands = st.integers(-30, 60).filter(lambda d: d != 0 and rational_sqrt(F(abs(d))) is None)


def to_sympy(x):
    if isinstance(x, F):
        return sympy.Rational(x.numerator, x.denominator)
    return to_sympy(x.rational) + to_sympy(x.coeff) * sympy.sqrt(x.radicand)


def test_rational_sqrt():
    assert rational_sqrt(F(9, 49)) == F(3, 7)
    assert rational_sqrt(F(2)) is None
    assert rational_sqrt(F(-4)) is None


def test_make_collapses_rational_roots():
    assert Surd.make(1, 2, F(9, 4)) == 4
    assert isinstance(Surd.sqrt(F(1, 2)), Surd)
    i = Surd.sqrt(-4)
    assert i.radicand == -1 and i.coeff == 2 and not is_real(i)


@settings(max_examples=200, deadline=None)
@given(fracs, fracs, fracs, fracs, radicands)
def test_field_operations_match_sympy(a, b, c, d, r):
    assume(b != 0)
    x, y = Surd.make(a, b, r), Surd.make(c, d, r)
    for ours, ref in ((x + y, to_sympy(x) + to_sympy(y)), (x - y, to_sympy(x) - to_sympy(y)), (x * y, to_sympy(x) * to_sympy(y))):
        assert sympy.expand(to_sympy(ours) - ref) == 0
    if y != 0:
        assert sympy.expand(to_sympy(x / y) * to_sympy(y) - to_sympy(x)) == 0
    assert sympy.expand(to_sympy(x**2) - to_sympy(x) ** 2) == 0


@settings(max_examples=200, deadline=None)
@given(fracs, fracs, st.integers(2, 60).filter(lambda d: rational_sqrt(F(d)) is None), fracs)
def test_real_order_matches_float(a, b, r, c):
    assume(b != 0)
    x = Surd.make(a, b, r)
    ref = float(a) + float(b) * r**0.5
    assert (x < c) == (ref < float(c))
    assert abs(float(x) - ref) < 1e-9 * (1 + abs(ref))
    assert real_part(x) == x


@settings(max_examples=100, deadline=None)
@given(fracs, fracs, radicands)
def test_exact_string_round_trip(a, b, r):
    x = Surd.make(a, b, r)
    assert parse_exact(format_exact(x)) == x


def test_high_precision_approximation():
    x = Surd.sqrt(2)
    with mpmath.workdps(60):
        assert abs(approx(x, 60) - mpmath.sqrt(2)) < mpmath.mpf(10) ** -55


def test_complex_values():
    z = F(1, 2) + Surd.sqrt(-3) / 2
    assert not is_real(z)
    assert real_part(z) == F(1, 2)
    assert complex(z) == pytest.approx(complex(0.5, 3**0.5 / 2))
    assert z * z.conjugate() == 1
