"""Unsupervised evaluation of a real 20K-item test, step by step.

Three binary classifiers labeled 20,000 census records. We only look at how
often each of the eight joint decisions occurred. From that alone we recover
the label prevalence along with each classifier's per-label accuracy, then
estimate how many items behind each joint decision truly carry each label.
The true split is printed next to the estimate at the end.
"""

from fractions import Fraction

from juryeval import PatternCounts, compare_methods, evaluate, frequencies, trio_moments
from juryeval.core import PATTERNS, ByTrueLabelCounts
from juryeval.surd import approx

observed = PatternCounts.from_sequence((568, 553, 649, 1813, 3534, 3607, 1068, 8208))
truth = ByTrueLabelCounts.from_columns(
    (424, 168, 283, 415, 252, 194, 129, 135),
    (144, 385, 366, 1398, 3282, 3413, 939, 8073),
)

# 1. Observable statistics: per-classifier marginals and centered moments.
m = trio_moments(frequencies(observed))
print("fraction of b votes per classifier:", [str(f) for f in m.f_b])
for pair, d in m.delta_pair.items():
    print(f"pair covariance {pair}: {float(d):+.6f}")
print(f"third central moment: {float(m.delta_trio):+.6f}")

# 2. Invert. Prevalence solves a quadratic whose discriminant decides whether
#    the answer is rational. On real data it usually is not.
sol = evaluate(observed)
print("\nquadratic (A, B, C):", [float(c) for c in sol.quadratic.as_tuple()])
print("alarm:", sol.alarm.kind.value, "-", sol.alarm.detail)
for i, cand in enumerate(sol.candidates):
    tag = "reported" if i == sol.selected else "conjugate"
    print(f"{tag:>9}: p_a = {approx(cand.p_a, 20)}")
print("exact form of the reported prevalence:", sol.point.p_a)

# 3. Compare with majority voting and with the hidden answer key.
rep = compare_methods(observed, truth)
ae = rep.ae_partition_rounded()
print("\npattern   observed   AE(a, b)       true(a, b)     MV(a, b)")
for p in PATTERNS:
    print(
        f"{p:>7} {observed[p]:>10}   {ae.cell(p, 'a'):>5} {ae.cell(p, 'b'):>5}"
        f"    {truth.cell(p, 'a'):>5} {truth.cell(p, 'b'):>5}"
        f"    {rep.mv_partition.cell(p, 'a'):>5} {rep.mv_partition.cell(p, 'b'):>5}"
    )

# 4. Group decisions. AE sides with the minority on (b, a, a) and friends,
#    matching the best any per-pattern rule could do on this test.
print("\nAE decisions:", rep.ae_decisions())
print(f"labeling errors: best possible {rep.gt_errors}, AE {rep.ae_errors}, majority vote {rep.mv_errors}")

print("\nper-label accuracies (true / AE / MV):")
for c in range(3):
    for lab in "ab":
        t = rep.gt_point.acc(c, lab)
        print(
            f"  classifier {c} on {lab}: {float(t):.3f} / {float(rep.ae_point.acc(c, lab)):.3f}"
            f" / {float(rep.mv_point.acc(c, lab)):.3f}"
        )
assert rep.gt_point.p_a == Fraction(1, 10)
