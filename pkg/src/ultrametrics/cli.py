"""Command-line front end.

Exit codes: 0 success (and a valid verdict), 1 the input is mathematically
invalid (witnesses are printed), 2 unusable input or bad usage.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from fractions import Fraction

from .balls import (ball_partition, build_dendrogram, center_invariance_check,
                    nested_or_disjoint_check, open_ball)
from .constructors import (BallRelabeling, ConstructionError, compose_preserving, dlps_space,
                           modify_ultrametric, partition_discrete)
from .distsets import classify_order_type, distance_set, tb_distance_set_check
from .formats import (FormatError, dendrogram_to_json, description_to_json, parse_description,
                      parse_gamma, parse_space, space_to_csv, space_to_json, to_newick)
from .gamma import gamma_ball, gamma_base_check, validate_gamma_distance
from .preserving import FunctionError, function_by_name
from .rational import format_rat, parse_rat, parse_rat_list
from .sequences import RuleError
from .spaces import (NotUltrametricError, SpaceError, ValidationReport, Witness,
                     four_point_check, isosceles_witnesses, validate_metric, validate_ultrametric)

OK, INVALID, USAGE = 0, 1, 2


class Invalid(Exception):
    """The input is well formed but fails a required property."""

    def __init__(self, message: str, payload: dict):
        super().__init__(message)
        self.payload = payload


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ultrametrics", description="Exact finite ultrametric spaces.")
    p.add_argument("--format", choices=("json", "text"), default="json", help="output rendering")
    sub = p.add_subparsers(dest="verb", metavar="VERB")
    sub.required = True

    v = sub.add_parser("validate", help="check metric / ultrametric laws")
    v.add_argument("file", help="space file (JSON or CSV, '-' for stdin)")
    mode = v.add_mutually_exclusive_group()
    for flag in ("metric", "ultra", "isosceles", "fourpoint", "balls"):
        mode.add_argument(f"--{flag}", dest="mode", action="store_const", const=flag)
    v.set_defaults(mode="ultra")

    sub.add_parser("distset", help="distance set of a space").add_argument("file")
    sub.add_parser("classify", help="order type of a distance set description").add_argument("file")
    sub.add_parser("tbcheck", help="is it the distance set of an infinite totally bounded ultrametric?") \
        .add_argument("file")

    b = sub.add_parser("balls", help="open ball around a center")
    b.add_argument("file")
    b.add_argument("--center", required=True)
    b.add_argument("--radius", required=True)

    pa = sub.add_parser("partition", help="ball partition at a radius")
    pa.add_argument("file")
    pa.add_argument("--radius", required=True)
    pa.add_argument("--candidates", help="comma separated candidate centers (default: all points)")

    t = sub.add_parser("tree", help="dendrogram of an ultrametric space")
    t.add_argument("file")
    t.add_argument("--newick", action="store_true")

    c = sub.add_parser("construct", help="build a space")
    csub = c.add_subparsers(dest="kind", metavar="KIND")
    csub.required = True
    csub.add_parser("dlps").add_argument("--set", required=True, dest="values", help='e.g. "0,1/2,1"')
    csub.add_parser("partition").add_argument("--classes", required=True, help='e.g. "a|b,c"')
    m = csub.add_parser("modify")
    m.add_argument("file")
    m.add_argument("--radius", required=True)
    m.add_argument("--g", required=True, help="one value per partition ball, in ball order")
    co = csub.add_parser("compose")
    co.add_argument("file")
    co.add_argument("--f", required=True, dest="function")

    g = sub.add_parser("gamma", help="distances valued in a finite ordered set")
    gsub = g.add_subparsers(dest="action", metavar="ACTION")
    gsub.required = True
    gsub.add_parser("validate").add_argument("file")
    gb = gsub.add_parser("ball")
    gb.add_argument("file")
    gb.add_argument("--center", required=True)
    gb.add_argument("--gamma", required=True)
    gsub.add_parser("base").add_argument("file")
    return p


# helpers

def _read_text(path: str, stdin) -> str:
    if path == "-":
        return stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror or exc}") from None


def _load_space(path, stdin):
    return parse_space(_read_text(path, stdin), _source(path))


def _rat(text: str, flag: str) -> Fraction:
    try:
        return parse_rat(text)
    except ValueError as exc:
        raise FormatError(f"{flag}: {exc}") from None


def _rats(text: str, flag: str) -> list[Fraction]:
    try:
        return parse_rat_list(text)
    except ValueError as exc:
        raise FormatError(f"{flag}: {exc}") from None


def _need_ultrametric(space, what: str):
    report = validate_ultrametric(space)
    if not report.valid:
        raise Invalid(f"{what} needs an ultrametric space", report.to_json())


def _tuple_report(tuples, law: str) -> ValidationReport:
    return ValidationReport(tuple(Witness(tuple(t), law, None, None) for t in tuples))


# verbs: each returns (payload, exit code)

def _validate(args, stdin):
    space = _load_space(args.file, stdin)
    if args.mode == "metric":
        report = validate_metric(space)
    elif args.mode == "ultra":
        report = validate_ultrametric(space)
    elif args.mode == "isosceles":
        report = _tuple_report(isosceles_witnesses(space), "isosceles")
    elif args.mode == "fourpoint":
        report = _tuple_report(four_point_check(space), "four-point")
    else:
        report = ValidationReport(center_invariance_check(space).witnesses
                                  + nested_or_disjoint_check(space).witnesses)
    out = {"check": args.mode, **report.to_json()}
    return out, OK if report.valid else INVALID


def _distset(args, stdin):
    ds = distance_set(_load_space(args.file, stdin))
    return {"distance_set": [format_rat(v) for v in ds.values]}, OK


def _source(path):
    return "<stdin>" if path == "-" else path


def _load_desc(args, stdin):
    return parse_description(_read_text(args.file, stdin), _source(args.file))


def _classify(args, stdin):
    desc = _load_desc(args, stdin)
    ot = classify_order_type(desc)
    out = {"description": description_to_json(desc), "order_type": ot.tag, "evidence": ot.evidence}
    if ot.size is not None:
        out["size"] = ot.size
    return out, OK


def _tbcheck(args, stdin):
    desc = _load_desc(args, stdin)
    res = tb_distance_set_check(desc)
    out = {
        "verdict": "valid" if res.holds else "invalid",
        "order_type": res.order_type.tag,
        "accumulates_at_zero": res.accumulates_at_zero,
        "normal_form": res.normal_form,
        "routes_agree": res.agree,
        "evidence": res.evidence,
    }
    return out, OK if res.holds else INVALID


def _balls(args, stdin):
    space = _load_space(args.file, stdin)
    r = _rat(args.radius, "--radius")
    ball = open_ball(space, args.center, r)
    members = [x for x in space.labels if x in ball.members]
    return {"center": ball.center, "radius": format_rat(r), "members": members}, OK


def _partition(args, stdin):
    space = _load_space(args.file, stdin)
    r = _rat(args.radius, "--radius")
    cands = None
    if args.candidates is not None:
        cands = [c.strip() for c in args.candidates.split(",") if c.strip()]
    _need_ultrametric(space, "partition")
    part = ball_partition(space, r, cands)
    classes = [
        {"representative": b.center, "members": [x for x in space.labels if x in b.members]}
        for b in part.classes
    ]
    return {"radius": format_rat(r), "classes": classes}, OK


def _tree(args, stdin):
    space = _load_space(args.file, stdin)
    _need_ultrametric(space, "tree")
    tree = build_dendrogram(space)
    if args.newick:
        return {"newick": to_newick(tree)}, OK
    return {"tree": dendrogram_to_json(tree)}, OK


def _parse_classes(text: str) -> list[list[str]]:
    classes = [[x.strip() for x in block.split(",")] for block in text.split("|")]
    for k, block in enumerate(classes, start=1):
        if any(not x for x in block):
            raise FormatError(f"--classes: class {k} has an empty label")
    return classes


def _construct(args, stdin):
    if args.kind == "dlps":
        return {"space": dlps_space(_rats(args.values, "--set"))}, OK
    if args.kind == "partition":
        return {"space": partition_discrete(_parse_classes(args.classes))}, OK
    space = _load_space(args.file, stdin)
    _need_ultrametric(space, f"construct {args.kind}")
    if args.kind == "modify":
        r1 = _rat(args.radius, "--radius")
        if r1 <= 0:
            raise FormatError("--radius must be positive")
        part = ball_partition(space, r1)
        g = BallRelabeling.for_partition(part, _rats(args.g, "--g"))
        return {"space": modify_ultrametric(space, r1, g)}, OK
    f = function_by_name(args.function)
    try:
        return {"space": compose_preserving(space, f)}, OK
    except ConstructionError as exc:
        if not hasattr(exc, "violation"):
            raise
        v = exc.violation
        w = Witness(tuple(format_rat(x) for x in v[1:]), f"preserving-{v[0]}", None, None)
        raise Invalid(str(exc), ValidationReport((w,)).to_json()) from None


def _gamma(args, stdin):
    gd = parse_gamma(_read_text(args.file, stdin), _source(args.file))
    if args.action == "validate":
        report = validate_gamma_distance(gd)
        return report.to_json(), OK if report.valid else INVALID
    if args.action == "base":
        report = gamma_base_check(gd)
        return report.to_json(), OK if report.valid else INVALID
    ball = gamma_ball(gd, args.center, args.gamma)
    return {"center": args.center, "gamma": args.gamma,
            "members": [x for x in gd.labels if x in ball]}, OK


VERBS = {
    "validate": _validate,
    "distset": _distset,
    "classify": _classify,
    "tbcheck": _tbcheck,
    "balls": _balls,
    "partition": _partition,
    "tree": _tree,
    "construct": _construct,
    "gamma": _gamma,
}


# rendering

def _finish_construct(payload, fmt):
    space = payload["space"]
    if fmt == "text":
        return space_to_csv(space)
    return json.dumps(space_to_json(space), indent=2) + "\n"


def _render_text(payload: dict) -> str:
    lines = []
    if "witnesses" in payload:
        head = payload.get("check")
        lines.append(f"{head}: {payload['verdict']}" if head else payload["verdict"])
        for w in payload["witnesses"]:
            pts = " ".join(w["points"])
            tail = "" if w["lhs"] is None else f"  {w['lhs']} vs {w['rhs']}"
            lines.append(f"  {w['law']}: {pts}{tail}")
        return "\n".join(lines) + "\n"
    for key, val in payload.items():
        if key == "classes":
            for blk in val:
                lines.append(f"{blk['representative']}: {' '.join(blk['members'])}")
        elif isinstance(val, list):
            lines.append(f"{key}: {' '.join(str(x) for x in val)}")
        elif isinstance(val, dict):
            lines.append(f"{key}: {json.dumps(val, separators=(',', ':'))}")
        else:
            lines.append(f"{key}: {str(val).lower() if isinstance(val, bool) else val}")
    return "\n".join(lines) + "\n"


def render(payload: dict, fmt: str) -> str:
    if fmt == "text":
        return _render_text(payload)
    return json.dumps(payload, indent=2) + "\n"


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    err = io.StringIO()
    out = io.StringIO()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        stdout.write(out.getvalue())
        stderr.write(err.getvalue())
        return USAGE if exc.code not in (0, None) else OK

    try:
        payload, code = VERBS[args.verb](args, stdin)
        if args.verb == "construct":
            stdout.write(_finish_construct(payload, args.format))
        else:
            stdout.write(render(payload, args.format))
        return code
    except Invalid as exc:
        stderr.write(f"error: {exc}\n")
        stdout.write(render(exc.payload, args.format))
        return INVALID
    except NotUltrametricError as exc:
        stderr.write(f"error: {exc}\n")
        return INVALID
    except (SpaceError, RuleError, FunctionError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return USAGE


def main() -> None:
    sys.exit(run())
