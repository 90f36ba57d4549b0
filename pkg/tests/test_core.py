from fractions import Fraction

import pytest

from conftest import CENSUS_ACTUAL, CENSUS_OBSERVED, split
from juryeval.core import (
    PATTERNS,
    ByTrueLabelCounts,
    DecisionRecord,
    EmptyTestError,
    EvaluationPoint,
    InputError,
    PatternCounts,
    Sketch,
    aggregate,
    check_pattern,
    frequencies,
    project,
)


def test_census_projection(census_truth):
    assert project(census_truth).as_tuple() == CENSUS_OBSERVED
    assert project(census_truth).q == 20000


def test_census_prevalence_column_sums(census_truth):
    assert census_truth.total("a") == 2000
    assert census_truth.total("b") == 18000


def test_frequencies_are_exact_and_normalized(census_counts):
    f = frequencies(census_counts)
    assert f["bbb"] == Fraction(8208, 20000)
    assert sum(f.values()) == 1


def test_empty_test_rejected():
    with pytest.raises(EmptyTestError):
        frequencies(PatternCounts({}))


@pytest.mark.parametrize("bad", ["ab", "abc", "aaaa", "", 7])
def test_bad_patterns(bad):
    with pytest.raises(InputError):
        check_pattern(bad)


def test_negative_or_fractional_counts_rejected():
    with pytest.raises(InputError):
        PatternCounts({"aaa": -1})
    with pytest.raises(InputError):
        PatternCounts({"aaa": 1.5})


def test_missing_patterns_default_to_zero():
    c = PatternCounts({"aba": 3})
    assert c["bbb"] == 0 and c.q == 3


def test_aggregate_counts_each_item_once():
    recs = [
        DecisionRecord(0, {"x": "a", "y": "b", "z": "a"}, "a"),
        DecisionRecord(1, {"x": "a", "y": "b", "z": "a"}, "b"),
        DecisionRecord(2, {"x": "b", "y": "b", "z": "b"}),
    ]
    agg = aggregate(recs[:2], ("x", "y", "z"))
    assert agg.counts["aba"] == 2
    assert agg.by_label.cell("aba", "a") == 1 and agg.by_label.cell("aba", "b") == 1
    # truth on only some items: no by-label split
    assert aggregate(recs, ("x", "y", "z")).by_label is None


def test_aggregate_names_item_missing_a_decision():
    recs = [DecisionRecord("item-7", {"x": "a", "y": "b"})]
    with pytest.raises(InputError, match="item-7"):
        aggregate(recs, ("x", "y", "z"))


def test_record_rejects_unknown_label():
    with pytest.raises(InputError):
        DecisionRecord(1, {"x": "c"})


def test_evaluation_point_flat_round_trip():
    pt = EvaluationPoint.from_flat([Fraction(k, 10) for k in range(1, 8)])
    assert EvaluationPoint.from_flat(pt.flat()) == pt
    assert pt.acc(1, "b") == Fraction(5, 10)
    assert pt.p_b == Fraction(9, 10)


def test_sketch_trio_view_marginalizes():
    truth = {"a": {"aaaa": 2, "abab": 1}, "b": {"bbba": 4}}
    sk = Sketch.from_by_true_label(["1", "2", "3", "4"], truth)
    counts, gt = sk.trio_view(["1", "2", "4"])
    assert counts["aaa"] == 2 and counts["abb"] == 1 and counts["bba"] == 4
    assert gt.cell("bba", "b") == 4
    assert project(gt) == counts


def test_sketch_rejects_inconsistent_split():
    with pytest.raises(InputError):
        Sketch(("1", "2", "3"), {"aaa": 3}, {"a": {"aaa": 1}, "b": {"aaa": 1}})


def test_ground_truth_check_rejects_fractions():
    with pytest.raises(InputError):
        ByTrueLabelCounts({"a": {"aaa": Fraction(1, 2)}}).check_ground_truth()
    assert split(CENSUS_ACTUAL).is_integral
    assert len(PATTERNS) == 8
