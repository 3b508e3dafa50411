"""Command-line front end: parse inputs, run analyses, emit reports.

Exit codes: 0 when the analysis ran (negative mathematical verdicts are
results, not failures), 1 for usage/parse errors, 2 for internal invariant
violations such as the oracle and the recursion disagreeing in ``selftest``.
"""

from __future__ import annotations

import argparse
import itertools
import json
import re
import sys
import time
from fractions import Fraction
from typing import Any, Optional

from . import corpus, oracle, pattern as patmod, vertex as vxmod
from .core import (
    AngleSequence,
    CreasePattern,
    MVAssignment,
    MVLabel,
    normalize_pattern,
)
from .errors import (
    CapacityError,
    FlatFoldError,
    LocalMaekawaError,
    NotFlatFoldableError,
    ParseError,
    SchemaError,
    UnsupportedError,
)

_NECESSARY_ONLY = (
    "necessary only: these checks can prove a pattern unfoldable, never "
    "foldable; no flat-foldability claim is made"
)


# --------------------------------------------------------------------------
# parsing


def parse_angles(text: str) -> AngleSequence:
    """Comma/space-separated angles: integers, finite decimals, or p/q."""
    tokens = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if not tokens:
        raise ParseError("no angles given")
    angles = []
    for i, tok in enumerate(tokens):
        try:
            value = Fraction(tok)
        except (ValueError, ZeroDivisionError):
            raise ParseError("malformed angle %r at position %d" % (tok, i + 1)) from None
        if value <= 0:
            raise ParseError("non-positive angle %r at position %d" % (tok, i + 1))
        angles.append(value)
    return AngleSequence(tuple(angles))


def parse_assignment(text: str) -> MVAssignment:
    try:
        return MVAssignment.from_string(text)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _coerce_coordinate(value: Any, what: str) -> Fraction:
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise SchemaError("bad %s %r" % (what, value)) from None
    raise SchemaError("bad %s %r" % (what, value))


def parse_pattern(path: str) -> CreasePattern:
    """Load, validate, and normalize a crease-pattern JSON document.

    Schema: {"vertices": [[x, y], ...], "creases": [[i, j], ...],
    "boundary": [i, ...], "assignment": ["M"|"V", ...] (optional)} with
    coordinates as numbers or rational strings; decimals parse exactly.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh, parse_float=Fraction)
    except OSError as exc:
        raise SchemaError("cannot read %s: %s" % (path, exc)) from None
    except json.JSONDecodeError as exc:
        raise SchemaError("invalid JSON in %s: %s" % (path, exc)) from None
    if not isinstance(data, dict):
        raise SchemaError("the pattern document must be a JSON object")
    for key in ("vertices", "creases", "boundary"):
        if key not in data:
            raise SchemaError("missing %r" % key)
        if not isinstance(data[key], list):
            raise SchemaError("%r must be a list" % key)
    points = []
    for entry in data["vertices"]:
        if not isinstance(entry, list) or len(entry) != 2:
            raise SchemaError("each vertex must be an [x, y] pair")
        points.append(
            (
                _coerce_coordinate(entry[0], "coordinate"),
                _coerce_coordinate(entry[1], "coordinate"),
            )
        )
    creases = []
    for entry in data["creases"]:
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(i, int) for i in entry)
        ):
            raise SchemaError("each crease must be an [i, j] index pair")
        creases.append((entry[0], entry[1]))
    if not all(isinstance(i, int) for i in data["boundary"]):
        raise SchemaError("the boundary must list vertex indices")
    assignment = None
    if data.get("assignment") is not None:
        if not isinstance(data["assignment"], list):
            raise SchemaError("the assignment must be a list of labels")
        if len(data["assignment"]) != len(creases):
            raise SchemaError(
                "assignment has %d labels for %d creases"
                % (len(data["assignment"]), len(creases))
            )
        try:
            assignment = MVAssignment(
                tuple(MVLabel(str(l).upper()) for l in data["assignment"])
            )
        except ValueError:
            raise SchemaError("assignment labels must be 'M' or 'V'") from None
    try:
        built = CreasePattern.build(points, creases, data["boundary"], assignment)
        return normalize_pattern(built)
    except FlatFoldError:
        raise
    except (IndexError, TypeError, ValueError) as exc:
        raise SchemaError(str(exc)) from None


# --------------------------------------------------------------------------
# SVG output


_SVG_STYLE = (
    ".boundary{fill:none;stroke:#000;stroke-width:1.2}"
    ".crease{fill:none;stroke-width:0.8}"
    ".mountain{stroke:#b22;stroke-dasharray:9 3 1.5 3}"
    ".valley{stroke:#24e;stroke-dasharray:6 4}"
    ".plain{stroke:#555;stroke-width:0.4}"
)


def _fmt(value) -> str:
    return "%.6g" % float(value)


def emit_svg(p: CreasePattern, out_path: str) -> None:
    """Deterministic SVG: solid boundary, dash-dot mountains, dashed valleys,
    thin solid unassigned creases, viewBox fitted with a 5% margin."""
    xs = [float(p.point(i)[0]) for i in p.boundary]
    ys = [float(p.point(i)[1]) for i in p.boundary]
    margin = 0.05 * max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    vb = (
        min(xs) - margin,
        min(ys) - margin,
        (max(xs) - min(xs)) + 2 * margin,
        (max(ys) - min(ys)) + 2 * margin,
    )
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'viewBox="%s %s %s %s">' % tuple(_fmt(c) for c in vb),
        "<style>%s</style>" % _SVG_STYLE,
        '<polygon class="boundary" points="%s"/>'
        % " ".join("%s,%s" % (_fmt(x), _fmt(y)) for x, y in zip(xs, ys)),
    ]
    for ci in range(len(p.creases)):
        (x1, y1), (x2, y2) = p.crease_points(ci)
        if p.assignment is None:
            cls = "crease plain"
        elif p.assignment[ci] is MVLabel.MOUNTAIN:
            cls = "crease mountain"
        else:
            cls = "crease valley"
        lines.append(
            '<line class="%s" x1="%s" y1="%s" x2="%s" y2="%s"/>'
            % (cls, _fmt(x1), _fmt(y1), _fmt(x2), _fmt(y2))
        )
    lines.append("</svg>")
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise SchemaError("cannot write %s: %s" % (out_path, exc)) from None


# --------------------------------------------------------------------------
# reports


def _render(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True), file=out)
    else:
        for line in _text_lines(report):
            print(line, file=out)


def _text_lines(value: Any, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(value, dict):
        for key in value:
            sub = value[key]
            if isinstance(sub, (dict, list)) and sub:
                lines.append("%s%s:" % (prefix, key))
                lines.extend(_text_lines(sub, prefix + "  "))
            else:
                lines.append("%s%s: %s" % (prefix, key, _scalar(sub)))
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)):
                lines.append("%s-" % prefix)
                lines.extend(_text_lines(item, prefix + "  "))
            else:
                lines.append("%s- %s" % (prefix, _scalar(item)))
    else:
        lines.append("%s%s" % (prefix, _scalar(value)))
    return lines


def _scalar(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _input_block(v: AngleSequence) -> dict:
    return {
        "angles": v.as_strings(),
        "creases": len(v),
        "total": str(v.total),
        "kind": v.kind,
        "exact": v.exact,
    }


def _count_block(v: AngleSequence) -> tuple[Optional[dict], Optional[str]]:
    try:
        result = vxmod.count_mv(v)
    except NotFlatFoldableError:
        return None, "no flat foldings: the closure condition fails"
    steps = [
        {
            "start": step.start,
            "length": step.length,
            "factor": step.factor,
            "residual": step.residual.as_strings(),
        }
        for step in result.trace
    ]
    return (
        {
            "value": result.count,
            "base": result.base,
            "factors": result.factors,
            "trace": steps,
        },
        None,
    )


def cmd_analyze(args) -> int:
    v = parse_angles(args.angles)
    started = time.perf_counter()
    even = len(v) % 2 == 0
    report: dict[str, Any] = {
        "command": "analyze",
        "input": _input_block(v),
        "degree_even": even,
        "kawasaki": vxmod.kawasaki(v),
        "bounds": None,
        "count": None,
        "reason": None,
    }
    if even:
        lo, hi = vxmod.bounds(v)
        report["bounds"] = {"lower": lo, "upper": hi}
        report["count"], report["reason"] = _count_block(v)
    else:
        report["reason"] = "odd degree: flat-foldable vertices have even degree"
    report["timing_s"] = round(time.perf_counter() - started, 6)
    _render(report, args.format)
    return 0


def cmd_count(args) -> int:
    v = parse_angles(args.angles)
    started = time.perf_counter()
    report: dict[str, Any] = {"command": "count", "input": _input_block(v)}
    if len(v) % 2 == 0:
        report["count"], report["reason"] = _count_block(v)
    else:
        report["count"] = None
        report["reason"] = "odd degree: flat-foldable vertices have even degree"
    report["timing_s"] = round(time.perf_counter() - started, 6)
    _render(report, args.format)
    return 0


def cmd_check(args) -> int:
    v = parse_angles(args.angles)
    mv = parse_assignment(args.mv)
    if len(mv) != len(v):
        raise ParseError(
            "assignment labels %d creases but the vertex has %d" % (len(mv), len(v))
        )
    started = time.perf_counter()
    report: dict[str, Any] = {
        "command": "check",
        "input": _input_block(v),
        "assignment": str(mv),
        "maekawa": vxmod.maekawa_check(mv),
    }
    try:
        crimp = vxmod.crimp_validity(v, mv)
        report["crimp_valid"] = crimp
        report["reason"] = None
    except NotFlatFoldableError:
        crimp = False
        report["crimp_valid"] = False
        report["reason"] = "no flat foldings: the closure condition fails"
    oracle_block: dict[str, Any] = {"ran": False, "valid": None, "skipped": None}
    limit = len(v) if args.oracle else oracle.DEFAULT_LIMIT
    try:
        oracle_block["valid"] = oracle.oracle_is_valid(v, mv, limit=limit)
        oracle_block["ran"] = True
    except CapacityError:
        oracle_block["skipped"] = "beyond the exhaustive-search limit (use --oracle)"
    except UnsupportedError as exc:
        oracle_block["skipped"] = str(exc)
    report["oracle"] = oracle_block
    report["timing_s"] = round(time.perf_counter() - started, 6)
    _render(report, args.format)
    if oracle_block["ran"] and oracle_block["valid"] != crimp:
        print(
            "internal invariant violation: crimp reduction and the oracle disagree",
            file=sys.stderr,
        )
        return 2
    return 0


def cmd_enumerate(args) -> int:
    v = parse_angles(args.angles)
    started = time.perf_counter()
    report: dict[str, Any] = {"command": "enumerate", "input": _input_block(v)}
    if args.fast:
        report["method"] = "crimp-filter"
        if not vxmod.kawasaki(v):
            valid: list[str] = []
        else:
            valid = [
                "".join(l.value for l in combo)
                for combo in itertools.product(tuple(MVLabel), repeat=len(v))
                if vxmod.crimp_validity(v, MVAssignment(combo))
            ]
    else:
        report["method"] = "oracle"
        try:
            valid = [str(mv) for mv in oracle.enumerate_valid(v)]
        except CapacityError as exc:
            raise ParseError("%s (rerun with --fast)" % exc) from None
    report["valid_assignments"] = valid
    report["count"] = len(valid)
    report["timing_s"] = round(time.perf_counter() - started, 6)
    _render(report, args.format)
    return 0


def cmd_pattern_check(args) -> int:
    p = parse_pattern(args.file)
    started = time.perf_counter()
    kaw = patmod.local_kawasaki_all(p)
    traces = {}
    for vid in p.interior_vertex_ids():
        curve = patmod.curve_around_vertex(p, vid)
        result = patmod.reflection_trace(p, curve)
        traces[str(vid)] = {
            "creases_crossed": list(curve.crease_ids),
            "is_identity": result.is_identity,
            "max_deviation": result.map.deviation_from_identity(),
            "rotation_degrees": result.rotation_degrees,
            "reason": result.failure_reason,
        }
    report: dict[str, Any] = {
        "command": "pattern-check",
        "vertices": len(p.vertices),
        "creases": len(p.creases),
        "interior_vertices": p.interior_vertex_ids(),
        "split_vertices": sorted(p.split_vertices),
        "local_kawasaki": {
            str(vid): {
                "passes": chk.passes,
                "exact": chk.exact,
                "angles": list(chk.angles),
            }
            for vid, chk in kaw.items()
        },
        "reflection_traces": traces,
        "scope": _NECESSARY_ONLY,
    }
    if p.assignment is None:
        report["generalized_maekawa"] = {
            "evaluated": False,
            "reason": "no assignment present",
        }
    else:
        try:
            tally, holds = patmod.generalized_maekawa(p)
            report["generalized_maekawa"] = {
                "evaluated": True,
                "holds": holds,
                "tally": {
                    "mountains": tally.mountains,
                    "valleys": tally.valleys,
                    "interior_mountains": tally.interior_mountains,
                    "interior_valleys": tally.interior_valleys,
                    "up_vertices": tally.up_vertices,
                    "down_vertices": tally.down_vertices,
                    "split_pairs": tally.split_pairs,
                },
                "convention": (
                    "split border-to-border pairs count as one bookkeeping "
                    "crease: excluded from the tallies and from up/down"
                ),
            }
        except LocalMaekawaError as exc:
            report["generalized_maekawa"] = {
                "evaluated": False,
                "reason": "local M-V parity fails",
                "violating_vertices": list(exc.vertex_ids),
            }
    report["timing_s"] = round(time.perf_counter() - started, 6)
    _render(report, args.format)
    return 0


def cmd_pattern_svg(args) -> int:
    p = parse_pattern(args.file)
    emit_svg(p, args.output)
    print("wrote %s" % args.output)
    return 0


def cmd_selftest(args) -> int:
    named = [
        AngleSequence((90, 90, 90, 90)),
        AngleSequence((20, 10, 40, 50, 60, 60, 60, 60)),
        AngleSequence((100, 80, 80, 100)),
        AngleSequence((40, 60, 140, 120)),
    ]
    sequences = named + corpus.corpus_sequences(
        seed=args.seed, per_size=args.per_size, sizes=(2, 4, 6, 8)
    )
    failures = 0
    cases = []
    started = time.perf_counter()
    for seq in sequences:
        fast = vxmod.count_mv(seq).count
        slow = oracle.oracle_count(seq)
        ok = fast == slow
        failures += not ok
        cases.append(
            {
                "angles": seq.as_strings(),
                "recursion": fast,
                "oracle": slow,
                "ok": ok,
            }
        )
        if args.format == "text":
            print(
                "%s 2n=%d [%s] recursion=%d oracle=%d"
                % ("ok  " if ok else "FAIL", len(seq), ",".join(seq.as_strings()), fast, slow)
            )
    elapsed = round(time.perf_counter() - started, 6)
    if args.format == "json":
        _render(
            {
                "command": "selftest",
                "cases": cases,
                "sequences": len(sequences),
                "failures": failures,
                "timing_s": elapsed,
            },
            "json",
        )
    else:
        print(
            "selftest: %d sequences, %d failures, %.1fs"
            % (len(sequences), failures, elapsed)
        )
    if failures:
        print(
            "internal invariant violation: recursion and oracle disagree",
            file=sys.stderr,
        )
        return 2
    return 0


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        raise ParseError(message)


def _add_format(sub) -> None:
    sub.add_argument(
        "--format", choices=("text", "json"), default="text", help="report format"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="flatfold",
        description="Flat-foldability analysis for origami crease patterns.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="closure, parity, bounds, and count")
    p_analyze.add_argument("angles", help='sector angles, e.g. "90,90,90,90"')
    _add_format(p_analyze)
    p_analyze.set_defaults(func=cmd_analyze)

    p_count = sub.add_parser("count", help="count valid assignments")
    p_count.add_argument("angles")
    _add_format(p_count)
    p_count.set_defaults(func=cmd_count)

    p_check = sub.add_parser("check", help="check one mountain-valley assignment")
    p_check.add_argument("angles")
    p_check.add_argument("--mv", required=True, help="labels such as MMVM")
    p_check.add_argument(
        "--oracle",
        action="store_true",
        help="force the exhaustive oracle even beyond its default size limit",
    )
    _add_format(p_check)
    p_check.set_defaults(func=cmd_check)

    p_enum = sub.add_parser("enumerate", help="list all valid assignments")
    p_enum.add_argument("angles")
    p_enum.add_argument(
        "--fast",
        action="store_true",
        help="filter by crimp reduction instead of the exhaustive oracle",
    )
    _add_format(p_enum)
    p_enum.set_defaults(func=cmd_enumerate)

    p_pattern = sub.add_parser("pattern", help="multi-vertex pattern tools")
    psub = p_pattern.add_subparsers(dest="pattern_command", required=True)
    p_pcheck = psub.add_parser("check", help="necessary-condition report")
    p_pcheck.add_argument("file", help="crease-pattern JSON document")
    _add_format(p_pcheck)
    p_pcheck.set_defaults(func=cmd_pattern_check)
    p_psvg = psub.add_parser("svg", help="render the pattern as SVG")
    p_psvg.add_argument("file")
    p_psvg.add_argument("-o", "--output", required=True)
    p_psvg.set_defaults(func=cmd_pattern_svg)

    p_self = sub.add_parser("selftest", help="recursion-vs-oracle corpus check")
    p_self.add_argument("--seed", type=int, default=20250810)
    p_self.add_argument("--per-size", type=int, default=6)
    _add_format(p_self)
    p_self.set_defaults(func=cmd_selftest)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (ParseError, SchemaError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except FlatFoldError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
