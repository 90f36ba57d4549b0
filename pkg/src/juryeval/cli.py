"""Command line entry point: ``juryeval {evaluate,decide,simulate}``.

Exit codes: 0 clean, 2 input error, and for ``evaluate`` the most severe alarm
across the evaluated trios: 10 irrational, 11 complex, 12 out-of-range,
13 degenerate.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import mpmath

from .core import LABELS, PATTERNS, ConfigurationError, InputError, Sketch
from .decisions import ComparisonReport, compare_methods, count_errors, decision_rule, enumerate_trios
from .formats import (
    load_sketch,
    read_records,
    record_to_dict,
    report_to_dict,
    sketch_from_records,
    sketch_to_dict,
    write_json_atomic,
    write_lines_atomic,
)
from .majority import mv_decide
from .solver import AlarmKind
from .surd import approx

log = logging.getLogger("juryeval")

EXIT_CODES = {
    AlarmKind.CLEAN_RATIONAL: 0,
    AlarmKind.IRRATIONAL_REAL: 10,
    AlarmKind.COMPLEX: 11,
    AlarmKind.OUT_OF_RANGE: 12,
    AlarmKind.DEGENERATE: 13,
}
EXIT_INPUT = 2

DEFAULT_POINT = "1/10,521/1000,905/1000,603/1000,705/1000,69/100,717/1000"


def _fmt(x, digits: int = 6) -> str:
    if x is None:
        return "undef"
    v = approx(x, max(digits, 15))
    if isinstance(v, mpmath.mpc):
        return f"{mpmath.nstr(v.real, digits)}{'+' if v.imag >= 0 else '-'}{mpmath.nstr(abs(v.imag), digits)}i"
    return mpmath.nstr(v, digits)


def _load_input(path: str, fmt: str) -> Sketch:
    if fmt == "records":
        return sketch_from_records(read_records(path))
    return load_sketch(path, counts_only=(fmt == "counts"))


def _trios(sketch: Sketch, trio_arg: Optional[str]) -> list[tuple]:
    if trio_arg:
        trio = tuple(t.strip() for t in trio_arg.split(","))
        if len(trio) != 3:
            raise ConfigurationError("--trio needs three comma-separated classifier ids")
        return [trio]
    return enumerate_trios(sketch.classifiers)


def format_report(rep: ComparisonReport, digits: int = 6) -> str:
    """Human-readable table for one trio, laid out like a by-true-label table."""
    lines = [f"trio {rep.trio}: q = {rep.observed.q}"]
    sol = rep.ae_solution
    lines.append(f"  alarm: {rep.alarm.kind.value} ({rep.alarm.detail})")
    if sol.candidates is not None:
        for idx, cand in enumerate(sol.candidates):
            mark = "*" if idx == sol.selected else " "
            coords = ", ".join(_fmt(v, digits) for v in cand.flat())
            lines.append(f"  {mark} candidate {idx}: (p_a, pi_0a, pi_0b, pi_1a, pi_1b, pi_2a, pi_2b) = ({coords})")
        if sol.ambiguous:
            lines.append("    selection ambiguous: candidates tie under the policy")
    lines.append("    MV point:   (" + ", ".join(_fmt(v, digits) for v in rep.mv_point.flat()) + ")")
    if rep.gt_point is not None:
        lines.append("    true point: (" + ", ".join(_fmt(v, digits) for v in rep.gt_point.flat()) + ")")
    ae = rep.ae_partition_rounded()
    header = f"  {'decisions':>9} {'observed':>8} | {'AE a':>6} {'AE b':>6}"
    if rep.ground_truth is not None:
        header += f" | {'true a':>6} {'true b':>6}"
    header += f" | {'MV a':>6} {'MV b':>6}"
    lines.append(header)
    for p in PATTERNS:
        row = f"  {'(' + ','.join(p) + ')':>9} {rep.observed[p]:>8} |"
        if ae is not None:
            row += f" {ae.cell(p, 'a'):>6} {ae.cell(p, 'b'):>6}"
        else:
            row += f" {'-':>6} {'-':>6}"
        if rep.ground_truth is not None:
            row += f" | {rep.ground_truth.cell(p, 'a'):>6} {rep.ground_truth.cell(p, 'b'):>6}"
        row += f" | {rep.mv_partition.cell(p, 'a'):>6} {rep.mv_partition.cell(p, 'b'):>6}"
        lines.append(row)
    if rep.gt_errors is not None:
        lines.append(f"  labeling errors: GT {rep.gt_errors}  AE {rep.ae_errors}  MV {rep.mv_errors}")
    for note in rep.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines)


# -- subcommands -----------------------------------------------------------------


def cmd_evaluate(args) -> int:
    sketch = _load_input(args.input, args.format)
    reports = []
    for trio in _trios(sketch, args.trio):
        counts, truth = sketch.trio_view(trio)
        rep = compare_methods(counts, truth, policy=args.policy, trio=trio)
        reports.append(rep)
        print(format_report(rep))
        print()
    if args.output:
        write_json_atomic(args.output, {"reports": [report_to_dict(r, args.precision) for r in reports]})
    return max(EXIT_CODES[r.alarm.kind] for r in reports)


def cmd_decide(args) -> int:
    records = read_records(args.input)
    sketch = sketch_from_records(records)
    if len(sketch.classifiers) < 3:
        raise InputError("decisions file needs at least 3 classifiers")
    if args.method == "gt" and not sketch.has_truth:
        raise InputError("--method gt needs a true_label on every record")
    rules = {}
    summary = []
    for trio in _trios(sketch, args.trio):
        counts, truth = sketch.trio_view(trio)
        if args.method == "gt":
            rule = decision_rule(truth)
        elif args.method == "mv":
            rule = {p: mv_decide(p) for p in PATTERNS}
        else:
            rule = compare_methods(counts, None, policy=args.policy, trio=trio).ae_decisions()
        rules[trio] = rule
        entry = {"trio": list(trio), "method": args.method}
        if truth is not None:
            entry["errors"] = count_errors(rule, truth)
        summary.append(entry)
        msg = f"trio {trio}: method {args.method}"
        if "errors" in entry:
            msg += f", errors {entry['errors']} of {counts.q}"
        print(msg)

    if args.output:
        def lines():
            for rec in records:
                labels = {
                    ",".join(trio): rule["".join(rec.decisions[c] for c in trio)] for trio, rule in rules.items()
                }
                out = {"item_id": rec.item_id, "labels": labels}
                if rec.true_label is not None:
                    out["true_label"] = rec.true_label
                yield json.dumps(out)

        write_lines_atomic(args.output, lines())
        write_json_atomic(Path(args.output).with_suffix(".summary.json"), summary)
    return 0


def _parse_point(text: str) -> tuple[Fraction, list[Fraction], list[Fraction]]:
    try:
        vals = [Fraction(v.strip()) for v in text.split(",")]
    except ValueError:
        raise ConfigurationError(f"--point must be comma-separated numbers, got {text!r}") from None
    if len(vals) < 7 or len(vals) % 2 == 0:
        raise ConfigurationError("--point needs p_a followed by (pi_a, pi_b) for at least 3 classifiers")
    for v in vals:
        if not 0 <= v <= 1:
            raise ConfigurationError(f"--point coordinates must lie in [0, 1], got {v}")
    return vals[0], vals[1::2], vals[2::2]


def _simulate_trial(job):
    from .synthesis import error_correlations, sample_ensemble

    t, seed, p_a, acc_a, acc_b, q, spec, classifiers, fmt, out_dir = job
    sketch, records = sample_ensemble(p_a, acc_a, acc_b, q, seed, spec, classifiers, True)
    if fmt == "records":
        write_lines_atomic(out_dir / f"records_{t:04d}.jsonl", (json.dumps(record_to_dict(r)) for r in records))
    else:
        write_json_atomic(out_dir / f"sketch_{t:04d}.json", sketch_to_dict(sketch))
    n = len(classifiers)
    measured = {}
    for i, j in itertools.combinations(range(n), 2):
        k = next(c for c in range(n) if c not in (i, j))
        trio = tuple(sorted((i, j, k)))
        _, truth = sketch.trio_view([classifiers[c] for c in trio])
        corr = error_correlations(truth)
        si, sj = trio.index(i), trio.index(j)
        for lab in LABELS:
            v = corr[(si, sj, lab)]
            if v is not None:
                measured[f"{classifiers[i]},{classifiers[j]},{lab}"] = float(v)
    return measured


def cmd_simulate(args) -> int:
    from .synthesis import CorrelationSpec

    p_a, acc_a, acc_b = _parse_point(args.point)
    n = len(acc_a)
    try:
        rho = Fraction(args.rho)
    except ValueError:
        raise ConfigurationError(f"--rho must be a number, got {args.rho!r}") from None
    if not -1 <= rho <= 1:
        raise ConfigurationError("--rho must lie in [-1, 1]")
    if args.trials < 1 or args.q < 1:
        raise ConfigurationError("--trials and --q must be positive")
    pairs = list(itertools.combinations(range(n), 2))
    spec = CorrelationSpec.uniform(rho, pairs=pairs) if rho else None
    classifiers = [str(c + 1) for c in range(n)]
    out_dir = Path(args.output_dir)
    jobs = [
        (t, args.seed + t, float(p_a), [float(x) for x in acc_a], [float(x) for x in acc_b],
         args.q, spec, classifiers, args.format, out_dir)
        for t in range(args.trials)
    ]
    if args.jobs > 1 and args.trials > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_simulate_trial, jobs))
    else:
        results = [_simulate_trial(job) for job in jobs]
    measured: dict = {}
    for res in results:
        for key, val in res.items():
            measured.setdefault(key, []).append(val)
    summary = {
        "trials": args.trials,
        "q": args.q,
        "seed": args.seed,
        "rho": str(rho),
        "point": args.point,
        "mean_pair_error_correlation": {k: sum(v) / len(v) for k, v in sorted(measured.items())},
    }
    write_json_atomic(out_dir / "summary.json", summary)
    print(f"wrote {args.trials} {args.format} file(s) to {out_dir}")
    for key, val in summary["mean_pair_error_correlation"].items():
        print(f"  Gamma[{key}] = {val:+.4f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="juryeval", description="Algebraic evaluation of binary classifier trios.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("evaluate", help="evaluate every trio in an input file")
    ev.add_argument("--input", required=True)
    ev.add_argument("--format", choices=["sketch", "counts", "records"], default="sketch")
    ev.add_argument("--policy", default="better-than-random")
    ev.add_argument("--trio", help="comma-separated ids; default: every trio")
    ev.add_argument("--output", help="write the machine-readable report here")
    ev.add_argument("--precision", type=int, default=50, help="significant digits for approximations")
    ev.set_defaults(func=cmd_evaluate)

    de = sub.add_parser("decide", help="label items from a per-item decisions file")
    de.add_argument("--input", required=True)
    de.add_argument("--method", choices=["ae", "mv", "gt"], default="ae")
    de.add_argument("--policy", default="better-than-random")
    de.add_argument("--trio")
    de.add_argument("--output", help="labeled JSON-lines output")
    de.set_defaults(func=cmd_decide)

    si = sub.add_parser("simulate", help="generate synthetic sketches")
    si.add_argument("--point", default=DEFAULT_POINT, help="p_a,pi_1a,pi_1b,pi_2a,pi_2b,...")
    si.add_argument("--q", type=int, default=20000)
    si.add_argument("--trials", type=int, default=1)
    si.add_argument("--rho", default="0", help="shared-draw mixture weight for every pair and label")
    si.add_argument("--seed", type=int, default=0)
    si.add_argument("--output-dir", default="sketches")
    si.add_argument("--format", choices=["sketch", "records"], default="sketch")
    si.add_argument("--jobs", type=int, default=1, help="worker processes for trial batches")
    si.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (InputError, ConfigurationError, OSError) as exc:
        print(f"juryeval: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
