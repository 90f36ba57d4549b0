from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from conftest import points
from juryeval.core import PATTERNS, EvaluationPoint
from juryeval.forward import (
    DomainError,
    exact_counts,
    expected_partition,
    generating_set,
    label_term,
    pattern_frequencies,
    swap_transform,
)
from oracles import forward_bruteforce

ROUND_TRIP = EvaluationPoint(F(3, 10), (F(7, 10), F(6, 10), F(8, 10)), (F(8, 10), F(7, 10), F(9, 10)))


def test_perfect_classifiers():
    f = pattern_frequencies(EvaluationPoint(F(1, 2), (1, 1, 1), (1, 1, 1)))
    assert f["aaa"] == F(1, 2) and f["bbb"] == F(1, 2)
    assert all(f[p] == 0 for p in PATTERNS if p not in ("aaa", "bbb"))


def test_coin_flip_classifiers():
    half = F(1, 2)
    f = pattern_frequencies(EvaluationPoint(half, (half,) * 3, (half,) * 3))
    assert set(f.values()) == {F(1, 8)}


def test_aba_instance_written_out():
    pt = ROUND_TRIP
    (ia, ja, ka), (ib, jb, kb) = pt.acc_a, pt.acc_b
    expected = pt.p_a * ia * (1 - ja) * ka + pt.p_b * (1 - ib) * jb * (1 - kb)
    assert pattern_frequencies(pt)["aba"] == expected


def test_hand_computed_aaa():
    # 0.3*0.7*0.6*0.8 + 0.7*0.2*0.3*0.1
    assert pattern_frequencies(ROUND_TRIP)["aaa"] == F(21, 200)


@settings(max_examples=100, deadline=None)
@given(points(F(0), F(1)))
def test_matches_bruteforce_and_normalizes(pt):
    f = pattern_frequencies(pt)
    assert f == forward_bruteforce(pt.p_a, pt.acc_a, pt.acc_b)
    assert sum(f.values()) == 1
    assert all(v >= 0 for v in f.values())


@settings(max_examples=100, deadline=None)
@given(points(F(0), F(1)))
def test_swap_is_an_involution_preserving_frequencies(pt):
    assert swap_transform(swap_transform(pt)) == pt
    assert pattern_frequencies(swap_transform(pt)) == pattern_frequencies(pt)


def test_swap_example():
    pt = EvaluationPoint(F(1, 10), (F(9, 10),) * 3, (F(8, 10),) * 3)
    assert swap_transform(pt) == EvaluationPoint(F(9, 10), (F(2, 10),) * 3, (F(1, 10),) * 3)


def test_all_items_of_a_perfect_label_a_test():
    part = expected_partition(EvaluationPoint(1, (1, 1, 1), (F(1, 3),) * 3), 10)
    assert part.cell("aaa", "a") == 10
    assert part.total() == 10


@settings(max_examples=50, deadline=None)
@given(points(F(0), F(1)))
def test_expected_partition_conserves(pt):
    q = 12345
    part = expected_partition(pt, q)
    f = pattern_frequencies(pt)
    assert part.total() == q
    for p in PATTERNS:
        assert part.cell(p, "a") + part.cell(p, "b") == q * f[p]
        assert part.cell(p, "a") == q * label_term(pt, p, "a")


def test_domain_errors():
    bad = EvaluationPoint(F(3, 2), (F(1, 2),) * 3, (F(1, 2),) * 3)
    with pytest.raises(DomainError):
        pattern_frequencies(bad)
    with pytest.raises(DomainError):
        expected_partition(bad, 10)
    # the unchecked form still evaluates for substitution checks
    assert sum(generating_set(bad).values()) == 1


def test_exact_counts_reproduce_frequencies():
    c = exact_counts(ROUND_TRIP, scale=3)
    assert {p: F(c[p], c.q) for p in PATTERNS} == pattern_frequencies(ROUND_TRIP)
