"""File formats: sketches, per-item records, and machine-readable reports.

Sketch (JSON)::

    {"q": 20000, "labels": ["a", "b"], "classifiers": ["1", "2", "3"],
     "by_true_label": {"a": {"aaa": 424, ...}, "b": {"aaa": 144, ...}}}

Pattern keys concatenate one label character per classifier, in
``classifiers`` order. A counts-only sketch replaces ``by_true_label`` with a
top-level ``"patterns": {"aaa": 568, ...}``.

Records (JSON lines), one item per line::

    {"item_id": 17, "decisions": {"1": "a", "2": "b", "3": "a"}, "true_label": "b"}

Exact numbers are written as ``"num/den"`` strings (``"a + b*sqrt(d)"`` for
quadratic surds) next to a decimal approximation.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Optional

import mpmath

from .core import (
    LABELS,
    PATTERNS,
    ByTrueLabelCounts,
    DecisionRecord,
    EvaluationPoint,
    InputError,
    PatternCounts,
    Sketch,
)
from .decisions import ComparisonReport
from .moments import TrioMoments
from .solver import AeSolution, AlarmKind, AlarmStatus, Quadratic
from .surd import approx, format_exact, parse_exact

SKETCH_SCHEMA = (
    '{"q": int, "labels": [l1, l2], "classifiers": [ids...], '
    '"by_true_label": {l1: {pattern: n}, l2: {pattern: n}}}  or  {..., "patterns": {pattern: n}}'
)


# -- sketches ----------------------------------------------------------------------


def _label_map(labels, where: str) -> dict[str, str]:
    if not isinstance(labels, list) or len(labels) != 2 or len(set(labels)) != 2:
        raise InputError(f"{where}.labels: expected two distinct labels, got {labels!r}")
    if any(not isinstance(x, str) or len(x) != 1 for x in labels):
        raise InputError(f"{where}.labels: labels must be single characters")
    return {labels[0]: "a", labels[1]: "b"}


def _translate(pattern: str, lmap: dict, width: int, where: str) -> str:
    if not isinstance(pattern, str) or len(pattern) != width:
        raise InputError(f"{where}: pattern {pattern!r} must have {width} label characters")
    try:
        return "".join(lmap[ch] for ch in pattern)
    except KeyError as exc:
        raise InputError(f"{where}: unknown label {exc.args[0]!r} in pattern {pattern!r}") from None


def _counts(obj, lmap, width, where) -> dict[str, int]:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object of pattern counts")
    out = {}
    for key, n in obj.items():
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise InputError(f"{where}.{key}: count must be a non-negative integer, got {n!r}")
        out[_translate(key, lmap, width, f"{where}.{key}")] = n
    return out


def sketch_from_dict(data: Any, where: str = "$", counts_only: bool = False) -> Sketch:
    """Parse a sketch object; errors name the offending JSON path."""
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected a JSON object; schema: {SKETCH_SCHEMA}")
    if "classifiers" not in data or ("by_true_label" not in data and "patterns" not in data):
        raise InputError(f"{where}: unrecognized sketch layout with keys {sorted(data)}; schema: {SKETCH_SCHEMA}")
    classifiers = data["classifiers"]
    if not isinstance(classifiers, list) or len(classifiers) < 3:
        raise InputError(f"{where}.classifiers: need a list of at least 3 ids")
    classifiers = [str(c) for c in classifiers]
    width = len(classifiers)
    lmap = _label_map(data.get("labels", ["a", "b"]), where)
    if "by_true_label" in data and not counts_only:
        btl = data["by_true_label"]
        if not isinstance(btl, dict):
            raise InputError(f"{where}.by_true_label: expected an object keyed by true label")
        split = {}
        for lab, cells in btl.items():
            if lab not in lmap:
                raise InputError(f"{where}.by_true_label: unknown true label {lab!r}")
            split[lmap[lab]] = _counts(cells, lmap, width, f"{where}.by_true_label.{lab}")
        sketch = Sketch.from_by_true_label(classifiers, split)
    elif "patterns" in data:
        sketch = Sketch(tuple(classifiers), _counts(data["patterns"], lmap, width, f"{where}.patterns"))
    else:
        btl = data["by_true_label"]
        totals: dict[str, int] = {}
        for lab, cells in btl.items():
            for p, n in _counts(cells, lmap, width, f"{where}.by_true_label.{lab}").items():
                totals[p] = totals.get(p, 0) + n
        sketch = Sketch(tuple(classifiers), totals)
    if "q" in data and data["q"] != sketch.q:
        raise InputError(f"{where}.q: declared {data['q']} but counts sum to {sketch.q}")
    if sketch.q == 0:
        raise InputError(f"{where}: sketch has no items")
    return sketch


def sketch_to_dict(sketch: Sketch) -> dict:
    out: dict = {"q": sketch.q, "labels": list(LABELS), "classifiers": list(sketch.classifiers)}
    if sketch.by_true_label is not None:
        out["by_true_label"] = {lab: dict(sketch.by_true_label[lab]) for lab in LABELS}
    else:
        out["patterns"] = dict(sketch.patterns)
    return out


def load_sketch(path, counts_only: bool = False) -> Sketch:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from None
    try:
        return sketch_from_dict(data, counts_only=counts_only)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


# -- records -----------------------------------------------------------------------


def record_from_dict(obj: Any, where: str) -> DecisionRecord:
    if not isinstance(obj, dict) or "decisions" not in obj or "item_id" not in obj:
        raise InputError(f"{where}: expected {{'item_id', 'decisions', ['true_label']}}")
    decisions = obj["decisions"]
    if not isinstance(decisions, dict):
        raise InputError(f"{where}.decisions: expected an object classifier -> label")
    return DecisionRecord(obj["item_id"], {str(k): v for k, v in decisions.items()}, obj.get("true_label"))


def read_records(path) -> list[DecisionRecord]:
    path = Path(path)
    out = []
    with path.open() as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            where = f"{path}:{lineno}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"{where}: invalid JSON ({exc.msg})") from None
            try:
                out.append(record_from_dict(obj, where))
            except InputError as exc:
                raise InputError(str(exc) if str(exc).startswith(where) else f"{where}: {exc}") from None
    if not out:
        raise InputError(f"{path}: no records")
    return out


def record_to_dict(rec: DecisionRecord) -> dict:
    out = {"item_id": rec.item_id, "decisions": dict(rec.decisions)}
    if rec.true_label is not None:
        out["true_label"] = rec.true_label
    return out


def sketch_from_records(records: Iterable[DecisionRecord], classifiers: Optional[list] = None) -> Sketch:
    """Count N-wide patterns over the records; truth kept iff every record has it."""
    records = list(records)
    if not records:
        raise InputError("no records")
    if classifiers is None:
        classifiers = sorted(records[0].decisions)
    patterns: dict[str, int] = {}
    split = {lab: {} for lab in LABELS}
    all_truth = True
    for rec in records:
        try:
            p = "".join(rec.decisions[c] for c in classifiers)
        except KeyError as exc:
            raise InputError(f"item {rec.item_id!r} has no decision from classifier {exc.args[0]!r}") from None
        patterns[p] = patterns.get(p, 0) + 1
        if rec.true_label is None:
            all_truth = False
        else:
            split[rec.true_label][p] = split[rec.true_label].get(p, 0) + 1
    if all_truth:
        return Sketch.from_by_true_label(classifiers, split)
    return Sketch(tuple(classifiers), patterns)


def write_json_atomic(path, obj) -> None:
    """Write JSON via a temporary file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(obj, fh, indent=1)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_lines_atomic(path, lines: Iterable[str]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            for line in lines:
                fh.write(line + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- exact values and reports ------------------------------------------------------


def _num(x, digits: int = 50):
    if x is None:
        return None
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    val = approx(x, digits)
    return {"exact": format_exact(x), "approx": mpmath.nstr(val, digits)}


def _unnum(obj):
    if obj is None or isinstance(obj, int):
        return obj
    return parse_exact(obj["exact"])


def _point(p: Optional[EvaluationPoint], digits):
    if p is None:
        return None
    return {
        "p_a": _num(p.p_a, digits),
        "acc_a": [_num(v, digits) for v in p.acc_a],
        "acc_b": [_num(v, digits) for v in p.acc_b],
    }


def _unpoint(obj) -> Optional[EvaluationPoint]:
    if obj is None:
        return None
    return EvaluationPoint(_unnum(obj["p_a"]), [_unnum(v) for v in obj["acc_a"]], [_unnum(v) for v in obj["acc_b"]])


def _partition(part: Optional[ByTrueLabelCounts], digits):
    if part is None:
        return None
    return {lab: {p: _num(part.cell(p, lab), digits) for p in PATTERNS} for lab in LABELS}


def _unpartition(obj) -> Optional[ByTrueLabelCounts]:
    if obj is None:
        return None
    return ByTrueLabelCounts({lab: {p: _unnum(v) for p, v in obj[lab].items()} for lab in LABELS})


def solution_to_dict(sol: AeSolution, digits: int = 50) -> dict:
    m = sol.moments
    return {
        "alarm": {"kind": sol.alarm.kind.value, "detail": sol.alarm.detail},
        "selected": sol.selected,
        "ambiguous": sol.ambiguous,
        "consistent": sol.consistent,
        "notes": list(sol.notes),
        "quadratic": [_num(c, digits) for c in sol.quadratic.as_tuple()],
        "moments": {
            "f_b": [_num(v, digits) for v in m.f_b],
            "delta_pair": {f"{i},{j}": _num(v, digits) for (i, j), v in m.delta_pair.items()},
            "delta_trio": _num(m.delta_trio, digits),
        },
        "candidates": None if sol.candidates is None else [_point(c, digits) for c in sol.candidates],
    }


def solution_from_dict(obj: dict) -> AeSolution:
    mo = obj["moments"]
    moments = TrioMoments(
        f_b=tuple(_unnum(v) for v in mo["f_b"]),
        delta_pair={tuple(int(x) for x in k.split(",")): _unnum(v) for k, v in mo["delta_pair"].items()},
        delta_trio=_unnum(mo["delta_trio"]),
    )
    cands = obj["candidates"]
    return AeSolution(
        candidates=None if cands is None else tuple(_unpoint(c) for c in cands),
        selected=obj["selected"],
        alarm=AlarmStatus(AlarmKind(obj["alarm"]["kind"]), obj["alarm"]["detail"]),
        quadratic=Quadratic(*(Fraction(_unnum(c)) for c in obj["quadratic"])),
        moments=moments,
        ambiguous=obj["ambiguous"],
        consistent=obj["consistent"],
        notes=tuple(obj["notes"]),
    )


def report_to_dict(rep: ComparisonReport, digits: int = 50) -> dict:
    """Machine-readable form of a :class:`ComparisonReport`."""
    dev = lambda d: None if d is None else [_num(v, digits) for v in d]  # noqa: E731
    return {
        "trio": list(rep.trio),
        "observed": dict(rep.observed.counts),
        "alarm": {"kind": rep.alarm.kind.value, "detail": rep.alarm.detail},
        "ae_solution": solution_to_dict(rep.ae_solution, digits),
        "ae_partition": _partition(rep.ae_partition, digits),
        "ae_partition_rounded": _partition(rep.ae_partition_rounded(), digits),
        "mv_partition": _partition(rep.mv_partition, digits),
        "ae_point": _point(rep.ae_point, digits),
        "mv_point": _point(rep.mv_point, digits),
        "clamped": rep.clamped,
        "ground_truth": _partition(rep.ground_truth, digits),
        "gt_point": _point(rep.gt_point, digits),
        "gt_errors": rep.gt_errors,
        "ae_errors": rep.ae_errors,
        "mv_errors": rep.mv_errors,
        "ae_deviation": dev(rep.ae_deviation),
        "mv_deviation": dev(rep.mv_deviation),
        "notes": list(rep.notes),
    }


def report_from_dict(obj: dict) -> ComparisonReport:
    undev = lambda d: None if d is None else tuple(_unnum(v) for v in d)  # noqa: E731
    return ComparisonReport(
        trio=tuple(obj["trio"]),
        observed=PatternCounts(obj["observed"]),
        alarm=AlarmStatus(AlarmKind(obj["alarm"]["kind"]), obj["alarm"]["detail"]),
        ae_solution=solution_from_dict(obj["ae_solution"]),
        ae_partition=_unpartition(obj["ae_partition"]),
        mv_partition=_unpartition(obj["mv_partition"]),
        ae_point=_unpoint(obj["ae_point"]),
        mv_point=_unpoint(obj["mv_point"]),
        clamped=obj["clamped"],
        ground_truth=_unpartition(obj["ground_truth"]),
        gt_point=_unpoint(obj["gt_point"]),
        gt_errors=obj["gt_errors"],
        ae_errors=obj["ae_errors"],
        mv_errors=obj["mv_errors"],
        ae_deviation=undev(obj["ae_deviation"]),
        mv_deviation=undev(obj["mv_deviation"]),
        notes=tuple(obj["notes"]),
    )
