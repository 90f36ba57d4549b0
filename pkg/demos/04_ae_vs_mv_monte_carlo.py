"""Algebraic evaluation versus majority voting over many synthetic tests.

Four classifiers with uneven per-label skill; at each prevalence we evaluate
one trio on 100 independent 20K-item tests and compare labeling errors and
accuracy-estimate errors. The gap is widest when one label is rare.
"""

import statistics
from fractions import Fraction as F

from juryeval import EvaluationPoint, compare_methods, sample_independent
from juryeval.decisions import accuracy_mae
from juryeval.synthesis import ground_truth_evaluation

skills = {1: (F("0.521"), F("0.905")), 2: (F("0.603"), F("0.705")), 3: (F("0.690"), F("0.717")), 4: (F("0.449"), F("0.931"))}
trios = {F(1, 10): (1, 2, 3), F(2, 5): (1, 2, 4), F(3, 5): (1, 3, 4), F(9, 10): (2, 3, 4)}

print(" p_a  trio      errors: best    AE     MV    accuracy MAE: AE     MV")
for p_a, trio in trios.items():
    pt = EvaluationPoint(p_a, [skills[c][0] for c in trio], [skills[c][1] for c in trio])
    rows = []
    for seed in range(100):
        gt = sample_independent(pt, 20_000, seed=seed)
        rep = compare_methods(ground_truth=gt)
        truth = ground_truth_evaluation(gt)
        rows.append((rep.gt_errors, rep.ae_errors, rep.mv_errors, accuracy_mae(rep.ae_point, truth), accuracy_mae(rep.mv_point, truth)))
    med = [statistics.median(r[k] for r in rows) for k in range(5)]
    print(f" {float(p_a):.1f}  {trio}   {med[0]:>10g} {med[1]:>6g} {med[2]:>6g}   {med[3]:>14.4f} {med[4]:>6.4f}")
