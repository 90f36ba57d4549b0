import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from juryeval.core import PATTERNS, ByTrueLabelCounts, EvaluationPoint, PatternCounts

# A 20K-item census test; row order follows PATTERNS.
CENSUS_OBSERVED = (568, 553, 649, 1813, 3534, 3607, 1068, 8208)
CENSUS_AE = ((399, 169), (133, 420), (253, 396), (416, 1397), (264, 3270), (139, 3468), (84, 984), (88, 8120))
CENSUS_ACTUAL = ((424, 144), (168, 385), (283, 366), (415, 1398), (252, 3282), (194, 3413), (129, 939), (135, 8073))
CENSUS_MV = ((568, 0), (553, 0), (649, 0), (1813, 0), (0, 3534), (0, 3607), (0, 1068), (0, 8208))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.report_lines():
            terminalreporter.write_line(line)


def split(rows) -> ByTrueLabelCounts:
    return ByTrueLabelCounts.from_columns([r[0] for r in rows], [r[1] for r in rows])


@pytest.fixture
def census_counts() -> PatternCounts:
    return PatternCounts.from_sequence(CENSUS_OBSERVED)


@pytest.fixture
def census_truth() -> ByTrueLabelCounts:
    return split(CENSUS_ACTUAL)


def rationals(lo=Fraction(1, 10), hi=Fraction(9, 10), max_den=40):
    """Rationals in [lo, hi] with modest denominators."""
    return (
        st.integers(2, max_den)
        .flatmap(lambda d: st.integers(int(lo * d) - 1, int(hi * d) + 1).map(lambda n: Fraction(n, d)))
        .filter(lambda x: lo <= x <= hi)
    )


def points(lo=Fraction(1, 10), hi=Fraction(9, 10), max_den=40):
    r = rationals(lo, hi, max_den)
    return st.builds(
        lambda p, a, b: EvaluationPoint(p, a, b),
        r,
        st.lists(r, min_size=3, max_size=3),
        st.lists(r, min_size=3, max_size=3),
    )


__all__ = ["PATTERNS", "CENSUS_OBSERVED", "CENSUS_AE", "CENSUS_ACTUAL", "CENSUS_MV", "split", "points", "rationals"]
