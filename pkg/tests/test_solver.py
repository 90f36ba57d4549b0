from fractions import Fraction as F

import mpmath
import pytest
import sympy
from hypothesis import given, settings

from conftest import points
from juryeval.core import PATTERNS, EvaluationPoint, PatternCounts, frequencies
from juryeval.forward import exact_counts, pattern_frequencies, swap_transform
from juryeval.moments import TrioMoments, trio_moments
from juryeval.solver import (
    AlarmKind,
    Quadratic,
    evaluate,
    prevalence_quadratic,
    reproduces,
    select_candidate,
    solve_prevalence,
)
from juryeval.surd import Surd, approx
from oracles import sympy_prevalence_roots

ROUND_TRIP = EvaluationPoint(F(3, 10), (F(7, 10), F(6, 10), F(8, 10)), (F(8, 10), F(7, 10), F(9, 10)))


def test_symmetric_perfect_quadratic():
    m = TrioMoments((F(1, 2),) * 3, {(0, 1): F(1, 4), (0, 2): F(1, 4), (1, 2): F(1, 4)}, F(0))
    quad = prevalence_quadratic(m)
    assert quad.as_tuple() == (F(1, 16), F(-1, 16), F(1, 64))
    roots = solve_prevalence(quad)
    assert roots.roots == (F(1, 2), F(1, 2)) and roots.kind is AlarmKind.CLEAN_RATIONAL


def test_perfect_trio_is_flagged_degenerate_but_recovered():
    sol = evaluate(PatternCounts({"aaa": 5, "bbb": 5}))
    assert sol.alarm.kind is AlarmKind.DEGENERATE
    assert sol.point == EvaluationPoint(F(1, 2), (1, 1, 1), (1, 1, 1))


def test_round_trip_point():
    sol = evaluate(exact_counts(ROUND_TRIP))
    assert sol.alarm.kind is AlarmKind.CLEAN_RATIONAL
    assert [c.p_a for c in sol.candidates] == [F(3, 10), F(7, 10)]
    assert sol.point == ROUND_TRIP
    assert sol.point.flat()[1:] == tuple(F(x, 10) for x in (7, 8, 6, 7, 8, 9))
    assert sol.conjugate == swap_transform(ROUND_TRIP)
    assert "not proof" in sol.alarm.detail


@settings(max_examples=150, deadline=None)
@given(points(max_den=20))
def test_quadratic_identities(pt):
    m = trio_moments(pattern_frequencies(pt))
    quad = prevalence_quadratic(m)
    assert quad.b == -quad.a
    assert quad.a - 4 * quad.c == m.delta_trio**2
    assert quad.discriminant == quad.a * m.delta_trio**2


def test_census_roots_against_sympy(census_counts):
    freqs = frequencies(census_counts)
    sol = evaluate(census_counts)
    assert sol.alarm.kind is AlarmKind.IRRATIONAL_REAL
    ref, t = sympy_prevalence_roots(freqs)
    ref = sorted(ref, key=lambda r: float(r))
    with mpmath.workdps(70):
        for ours, theirs in zip((c.p_a for c in sol.candidates), ref):
            assert abs(approx(ours, 60) - mpmath.mpf(str(sympy.N(theirs, 60)))) < mpmath.mpf(10) ** -50
    assert abs(float(sol.point.p_a) - 0.0888) < 5e-4
    assert abs(float(sol.conjugate.p_a) - 0.9112) < 5e-4
    assert sol.candidates[0].p_a + sol.candidates[1].p_a == 1
    assert sol.consistent


def test_census_candidates_substitute_exactly(census_counts):
    sol = evaluate(census_counts)
    for cand in sol.candidates:
        assert reproduces(cand, frequencies(census_counts))
        assert isinstance(cand.p_a, Surd)


def test_complex_roots_are_reported():
    quad = Quadratic(F(-1), F(1), F(1))  # disc = 1 + 4 = 5 > 0; flip sign of C for complex
    assert solve_prevalence(quad).kind is AlarmKind.IRRATIONAL_REAL
    roots = solve_prevalence(Quadratic(F(1), F(-1), F(1)))
    assert roots.kind is AlarmKind.COMPLEX
    assert roots.roots[0] + roots.roots[1] == 1


def test_degenerate_constant_classifier():
    # classifier 0 always votes a: every pair delta involving it vanishes
    sol = evaluate(PatternCounts({"aab": 3, "aba": 2, "abb": 4, "aaa": 1}))
    assert sol.alarm.kind is AlarmKind.DEGENERATE
    assert sol.point is None
    assert "zero pair deltas" in sol.alarm.detail


def test_out_of_range_rational():
    sol = evaluate(PatternCounts({"aaa": 3, "bbb": 1, "aab": 1, "bba": 2, "abb": 1}))
    assert sol.alarm.kind is AlarmKind.OUT_OF_RANGE
    assert sol.alarm.fired and not sol.in_range
    assert sol.point.p_a == F(-1, 2)
    assert sol.consistent


def test_selection_policies(census_counts):
    a = evaluate(census_counts, "better-than-random")
    b = evaluate(census_counts, "low-prevalence")
    c = evaluate(census_counts, "index:1")
    assert a.selected == 0 and b.selected == 0 and c.selected == 1
    with pytest.raises(ValueError):
        select_candidate(a.candidates, "nope")
    with pytest.raises(ValueError):
        select_candidate(a.candidates, 2)


def test_selection_tie_goes_to_mv_then_flags_ambiguity():
    half = F(1, 2)
    p = EvaluationPoint(F(1, 4), (half,) * 3, (half,) * 3)
    q = EvaluationPoint(F(3, 4), (half,) * 3, (half,) * 3)
    assert select_candidate((p, q), mv_prevalence=F(7, 10)) == (1, False)
    assert select_candidate((p, q), mv_prevalence=F(1, 2)) == (0, True)


@settings(max_examples=100, deadline=None)
@given(points())
def test_round_trip_property(pt):
    sol = evaluate(exact_counts(pt))
    if sol.alarm.kind is AlarmKind.DEGENERATE:
        return
    assert sol.alarm.kind is AlarmKind.CLEAN_RATIONAL
    assert pt in sol.candidates
    assert sol.candidates[1] == swap_transform(sol.candidates[0])
    assert sol.consistent
    assert sum(pattern_frequencies(sol.point).values()) == 1
    assert all(pattern_frequencies(c) == pattern_frequencies(pt) for c in sol.candidates)
    assert len(PATTERNS) == 8
