from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CENSUS_MV, split
from juryeval.core import PATTERNS, PatternCounts, frequencies
from juryeval.majority import mv_decide, mv_evaluate, mv_partition, mv_prevalence
from oracles import expand_items, majority_key_grading


def test_decide_examples():
    assert mv_decide("aba") == "a"
    assert mv_decide("bba") == "b"
    assert [mv_decide(p) for p in PATTERNS] == list("aaaabbbb")


def test_census_prevalence(census_counts):
    assert mv_prevalence(frequencies(census_counts)) == F(568 + 553 + 649 + 1813, 20000) == F(3583, 20000)


def test_census_partition(census_counts):
    assert mv_partition(census_counts) == split(CENSUS_MV)


def test_all_agree():
    pt = mv_evaluate(frequencies(PatternCounts({"aaa": 5, "bbb": 5})))
    assert pt.p_a == F(1, 2)
    assert set(pt.accuracies()) == {1}


def test_undefined_when_majority_never_picks_a_label():
    pt = mv_evaluate(frequencies(PatternCounts({"bbb": 3, "abb": 1})))
    assert pt.p_a == 0
    assert pt.acc_a == (None, None, None)
    assert pt.acc_b == (F(3, 4), 1, 1)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(PATTERNS), min_size=1, max_size=60))
def test_matches_per_item_grading(items):
    counts = PatternCounts({p: items.count(p) for p in PATTERNS})
    assert expand_items(counts)  # the oracle sees every item
    p_a, acc = majority_key_grading(items)
    pt = mv_evaluate(frequencies(counts))
    assert pt.p_a == p_a
    for c in range(3):
        assert pt.acc(c, "a") == acc[c, "a"]
        assert pt.acc(c, "b") == acc[c, "b"]
    for v in pt.flat():
        assert v is None or (isinstance(v, F) and 0 <= v <= 1)
