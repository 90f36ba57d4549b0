from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CENSUS_AE, CENSUS_MV, points, split
from juryeval.core import PATTERNS, ConfigurationError, EvaluationPoint, PatternCounts
from juryeval.decisions import (
    accuracy_mae,
    clamp_point,
    compare_methods,
    count_errors,
    decide,
    decision_rule,
    enumerate_trios,
    estimate_partition,
    per_classifier_summary,
    round_partition,
)
from juryeval.forward import exact_counts
from juryeval.majority import mv_decide
from juryeval.solver import AlarmKind


def test_census_ae_partition(census_counts, census_truth):
    rep = compare_methods(census_counts, census_truth)
    assert rep.ae_partition_rounded() == split(CENSUS_AE)
    assert rep.mv_partition == split(CENSUS_MV)
    assert rep.alarm.kind is AlarmKind.IRRATIONAL_REAL
    assert not rep.clamped


def test_census_error_counts(census_counts, census_truth):
    rep = compare_methods(census_counts, census_truth)
    assert rep.mv_errors == 2293 + 710 == 3003
    assert rep.gt_errors == 1010 + 710 == 1720
    assert rep.ae_errors == 1720


def test_census_error_addends(census_truth):
    rule = decision_rule(census_truth)
    maj_a = [p for p in PATTERNS if mv_decide(p) == "a"]
    maj_b = [p for p in PATTERNS if mv_decide(p) == "b"]
    wrong = lambda rows: sum(census_truth.cell(p, "b" if rule[p] == "a" else "a") for p in rows)  # noqa: E731
    assert wrong(maj_a) == 1010
    assert wrong(maj_b) == 710
    assert [rule[p] for p in maj_a] == ["a", "b", "b", "b"]


def test_ae_estimate_of_its_own_errors(census_counts):
    part = compare_methods(census_counts).ae_partition_rounded()
    rule = decision_rule(part)
    est = {p: part.cell(p, "b" if rule[p] == "a" else "a") for p in PATTERNS}
    assert sum(est[p] for p in PATTERNS[:4]) == 971
    assert sum(est[p] for p in PATTERNS[4:]) == 575


def test_counts_only_report(census_counts):
    rep = compare_methods(census_counts)
    assert rep.ground_truth is None and rep.gt_errors is None and rep.ae_errors is None
    assert rep.ae_decisions()["baa"] == "b"  # minority override


def test_perfect_point_partition():
    part = estimate_partition(EvaluationPoint(F(1, 2), (1, 1, 1), (1, 1, 1)), PatternCounts({"aaa": 7, "bbb": 3}))
    assert part.cell("aaa", "a") == 5 and part.cell("bbb", "b") == 5
    assert round_partition(part, PatternCounts({"aaa": 5, "bbb": 5})).column("a")[0] == 5


def test_decide_tie_uses_majority():
    part = split([(1, 1)] * 8)
    assert [decide(part, p) for p in PATTERNS] == [mv_decide(p) for p in PATTERNS]


def test_count_errors_accepts_callable_and_mapping(census_truth):
    assert count_errors(mv_decide, census_truth) == count_errors({p: mv_decide(p) for p in PATTERNS}, census_truth)


def test_ground_truth_must_project_to_counts(census_truth):
    with pytest.raises(ConfigurationError):
        compare_methods(PatternCounts({"aaa": 1}), census_truth)
    with pytest.raises(ConfigurationError):
        compare_methods()


def test_enumerate_trios():
    assert enumerate_trios(["4", "1", "3", "2"]) == [("1", "2", "3"), ("1", "2", "4"), ("1", "3", "4"), ("2", "3", "4")]
    with pytest.raises(ConfigurationError):
        enumerate_trios(["1", "2"])


def test_clamp_flags_movement():
    pt = EvaluationPoint(F(-1, 2), (1, F(1, 4), -1), (1, F(3, 4), F(1, 3)))
    clamped, moved = clamp_point(pt)
    assert moved and clamped.p_a == 0 and clamped.acc_a[2] == 0
    assert clamp_point(clamped) == (clamped, False)


def test_degenerate_falls_back_to_majority():
    rep = compare_methods(PatternCounts({"aab": 3, "aba": 2, "abb": 4, "aaa": 1}))
    assert rep.ae_point is None
    assert rep.ae_decisions() == {p: mv_decide(p) for p in PATTERNS}


@settings(max_examples=60, deadline=None)
@given(points(), st.integers(1, 5))
def test_partition_rows_sum_to_observed(pt, k):
    counts = exact_counts(pt, scale=k)
    rep = compare_methods(counts)
    if rep.ae_partition is None:
        return
    for p in PATTERNS:
        assert rep.ae_partition.cell(p, "a") + rep.ae_partition.cell(p, "b") == counts[p]
    rounded = rep.ae_partition_rounded()
    assert all(rounded.cell(p, "a") + rounded.cell(p, "b") == counts[p] for p in PATTERNS)
    assert rep.mv_partition.total() == counts.q


def test_accuracy_mae_and_summary(census_counts, census_truth):
    rep = compare_methods(census_counts, census_truth)
    assert accuracy_mae(rep.ae_point, rep.gt_point) < accuracy_mae(rep.mv_point, rep.gt_point)
    summary = per_classifier_summary([rep])
    assert set(summary) == {(c, lab) for c in ("0", "1", "2") for lab in "ab"}
