"""Command line front end.

    defectlab example NAME [--p P] | example --all
    defectlab classify FILE
    defectlab cut EXPRESSION [--group Z,Q]
    defectlab deform [FILE] [--a EXPR] [--vb LIST]
    defectlab probe EXPRESSION [--field tower]

With ``--json`` every command prints one JSON document (schema
``defectlab/1``) to stdout; otherwise a short text summary.  Exit codes:
0 all expectations met, 1 expectation mismatch, 2 input error,
3 precision or budget exhausted where an answer was required.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import datetime
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from defectlab import __version__
from defectlab.asdefect import (
    ASInstance,
    DeformationQuery,
    InseparableForm,
    PForm,
    TowerField,
    classify,
    deform,
    extremality_probe,
)
from defectlab.cuts import cut_compare, element_vs_cut, is_idempotent, is_subgroup_edge
from defectlab.errors import (
    DefectLabError,
    DepthExhaustedError,
    InsufficientDataError,
    ParseError,
    PrecisionError,
    UndecidableError,
)
from defectlab.exprparse import parse_cut_expr, parse_poly, parse_series
from defectlab.hahnfield import MonomialField
from defectlab.ogroup import INFINITY, GroupDesc, GroupElement, Ordering, to_fraction

SCHEMA = "defectlab/1"

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3

_PRECISION_ERRORS = (PrecisionError, UndecidableError, InsufficientDataError, DepthExhaustedError)


class InputError(DefectLabError):
    code = "input"


# -- loading ----------------------------------------------------------------------


def load_document(path: str | Path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    if path.suffix == ".toml":
        if sys.version_info >= (3, 11):
            import tomllib
        else:
            import tomli as tomllib
        try:
            return tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise ParseError(getattr(exc, "msg", str(exc)), getattr(exc, "lineno", 1) or 1, getattr(exc, "colno", 1) or 1) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def scenario_names() -> list[str]:
    files = resources.files("defectlab.scenarios")
    return sorted(f.name[:-5] for f in files.iterdir() if f.name.endswith(".json"))


def load_scenario(name: str) -> dict:
    if name not in scenario_names():
        raise InputError(f"unknown scenario {name!r}; known: {', '.join(scenario_names())}")
    text = resources.files("defectlab.scenarios").joinpath(name + ".json").read_text(encoding="utf-8")
    return json.loads(text)


def build_field(desc: dict, p: int, m: int = 1, depth: int | None = None):
    kind = desc.get("kind", "perfect")
    m = int(desc.get("m", m))
    if kind == "perfect":
        return MonomialField.perfect(p, m)
    if kind == "rational":
        return MonomialField.rational(p, m)
    if kind == "monomial":
        return MonomialField.make(p, desc["coords"], m)
    if kind == "tower":
        return TowerField.make(p, int(depth or desc.get("depth", 10)), m)
    raise InputError(f"unknown field kind {kind!r}")


def build_series(src, ring):
    if isinstance(src, str):
        return parse_series(src, ring)
    if isinstance(src, list):
        return ring.from_json({"terms": src})
    if isinstance(src, dict):
        return ring.from_json(src)
    raise InputError(f"cannot read a series from {src!r}")


def _fmt_value(v) -> str:
    return "inf" if v is INFINITY else str(v)


def _check(name: str, expected, actual) -> dict:
    return {"name": name, "expected": expected, "actual": actual, "ok": expected == actual}


def _values_json(values) -> list:
    out = []
    for v in values:
        ent = v.to_json()
        out.append(ent[0] if len(ent) == 1 else ent)
    return out


# -- scenario runners -------------------------------------------------------------


def run_reduction(sc: dict, p: int, opts: dict) -> tuple[dict, list]:
    field = build_field(sc["field"], p, opts.get("m") or 1)
    a = build_series(sc["a"], field.ring)
    budget = opts.get("budget") or sc.get("budget", 16)
    cls = classify(ASInstance(a, field), budget)
    result = cls.to_json()
    exp = sc.get("runs", {}).get(str(p), {}).get("expected", {})
    checks = []
    trace = cls.trace
    if "status" in exp:
        checks.append(_check("status", exp["status"], trace.status.value))
    if "correction_exponents" in exp:
        actual = [str(s.correction.leading()[0]) for s in trace.steps]
        checks.append(_check("correction_exponents", exp["correction_exponents"], actual))
    if "values" in exp:
        checks.append(_check("values", exp["values"], _values_json(trace.values)))
    if "kind" in exp:
        checks.append(_check("kind", exp["kind"], cls.kind.value))
    if "distance" in exp:
        checks.append(_check("distance", exp["distance"], None if cls.distance is None else str(cls.distance)))
    if "dependence" in exp:
        dep = None if cls.dependence is None else cls.dependence.value
        checks.append(_check("dependence", exp["dependence"], dep))
    for comp in exp.get("comparisons", []):
        actual = None
        if cls.distance is not None:
            actual = parse_cut_expr(f"{cls.distance} {comp['op']} {comp['rhs']}", cls.distance.desc, p).truth
        checks.append(_check(f"distance {comp['op']} {comp['rhs']}", comp["result"], actual))
    return result, checks


def run_deformation(sc: dict, p: int, opts: dict) -> tuple[dict, list]:
    field = build_field(sc["field"], p, opts.get("m") or 1, opts.get("depth"))
    a = build_series(sc["a"], field.ring)
    budget = opts.get("budget") or sc.get("budget", 16)
    vb = to_fraction(str(sc.get("vb", "1")))
    res = deform(DeformationQuery.with_value(a, field, vb), budget, opts.get("precision"))
    result = res.to_json()
    exp = sc.get("runs", {}).get(str(p), {}).get("expected", {})
    cls = res.classification
    actual = {
        "eta_values": _values_json(res.eta.values),
        "eta_distance": str(res.eta.cut),
        "condition_holds": res.condition_holds,
        "similarity_verified": res.similarity_verified,
        "approximants_agree": res.approximants_agree,
        "kind": cls.kind.value,
        "values": _values_json(cls.trace.values),
        "distance": None if cls.distance is None else str(cls.distance),
        "dependence": None if cls.dependence is None else cls.dependence.value,
    }
    checks = [_check(k, exp[k], v) for k, v in actual.items() if k in exp]
    rows = []
    for row in exp.get("sweep", []):
        r = deform(DeformationQuery.with_value(a, field, to_fraction(row["vb"])), budget, opts.get("precision"))
        rows.append(_sweep_row(row["vb"], r))
        checks.append(_check(f"sweep vb={row['vb']} condition", row["condition_holds"], r.condition_holds))
        checks.append(_check(f"sweep vb={row['vb']} similarity", row["condition_holds"], r.similarity_verified))
    if rows:
        result["sweep"] = rows
    return result, checks


def _sweep_row(vb, r) -> dict:
    cls = r.classification
    return {
        "vb": str(vb),
        "condition_value": _fmt_value(r.condition_value),
        "threshold": str(r.threshold),
        "condition_holds": r.condition_holds,
        "similarity_verified": r.similarity_verified,
        "kind": cls.kind.value,
        "distance": None if cls.distance is None else str(cls.distance),
        "dependence": None if cls.dependence is None else cls.dependence.value,
    }


def run_cuts(sc: dict, p: int, opts: dict) -> tuple[dict, list]:
    g = sc["group"]
    group = GroupDesc(int(g.get("p", p)), tuple(g["coords"]))
    hull = group.hull()
    checks = []
    rows = []
    for chk in sc["checks"]:
        desc = group if chk.get("in") == "group" or chk.get("op", "").startswith("embedded") else hull
        if "expr" in chk:
            r = parse_cut_expr(chk["expr"], desc, group.p)
            actual = r.truth if r.value is None else str(r.value)
        else:
            cut = parse_cut_expr(chk["cut"], desc, group.p).value
            op = chk["op"]
            if op.startswith("embedded"):
                cut = cut.embed(hull)
            if op == "idempotent":
                actual = is_idempotent(cut)
            elif op in ("edge", "embedded_edge"):
                actual = is_subgroup_edge(cut)
            elif op in ("membership", "embedded_membership"):
                alpha = GroupElement(cut.desc, tuple(Fraction(x) for x in chk["element"]))
                actual = element_vs_cut(alpha, cut).value
            else:
                raise InputError(f"unknown cut check {op!r}")
        rows.append({"name": chk["name"], "value": actual})
        checks.append(_check(chk["name"], chk["expected"], actual))
    return {"group": group.to_json(), "results": rows}, checks


RUNNERS = {"reduction": run_reduction, "deformation": run_deformation, "cuts": run_cuts}


def run_scenario(name: str, opts: dict) -> dict:
    sc = load_scenario(name)
    runner = RUNNERS[sc["type"]]
    ps = [opts["p"]] if opts.get("p") else [int(k) for k in sc.get("runs", {})] or [sc.get("group", {}).get("p", 2)]
    runs = []
    for p in ps:
        try:
            result, checks = runner(sc, p, opts)
            runs.append({"p": p, "result": result, "checks": checks, "ok": all(c["ok"] for c in checks)})
        except _PRECISION_ERRORS as exc:
            runs.append({"p": p, "error": _error_json(exc), "ok": False})
    return {
        "scenario": name,
        "description": sc.get("description", ""),
        "oracle": sc.get("oracle", ""),
        "runs": runs,
        "ok": all(r["ok"] for r in runs),
    }


def _run_scenario_job(args):
    name, opts = args
    return run_scenario(name, opts)


# -- commands ----------------------------------------------------------------------


def _error_json(exc: Exception) -> dict:
    out = {"code": getattr(exc, "code", "error"), "message": str(exc)}
    if isinstance(exc, ParseError):
        out["line"], out["column"] = exc.line, exc.column
    return out


def cmd_example(args) -> tuple[dict, int]:
    opts = _opts(args)
    if args.all:
        names = scenario_names()
        jobs = [(n, opts) for n in names]
        if args.jobs > 1:
            with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
                reports = list(pool.map(_run_scenario_job, jobs))
        else:
            reports = [_run_scenario_job(j) for j in jobs]
        reports.sort(key=lambda r: r["scenario"])
        ok = all(r["ok"] for r in reports)
        report = {"command": "example", "scenarios": reports, "ok": ok}
    else:
        if not args.name:
            raise InputError("give a scenario name or --all")
        report = {"command": "example", **run_scenario(args.name, opts)}
        ok = report["ok"]
    if not ok and _has_precision_failure(report):
        return report, EXIT_PRECISION
    return report, EXIT_OK if ok else EXIT_MISMATCH


def _has_precision_failure(report: dict) -> bool:
    runs = [r for s in report.get("scenarios", [report]) for r in s.get("runs", [])]
    failed = [r for r in runs if not r["ok"]]
    return bool(failed) and all("error" in r for r in failed)


def cmd_classify(args) -> tuple[dict, int]:
    doc = load_document(args.file)
    p = args.p or int(doc.get("p", 2))
    opts = _opts(args)
    field = build_field(doc.get("field", {}), p, args.m or int(doc.get("m", 1)), args.depth)
    if "a" not in doc:
        raise InputError("scenario file needs an 'a' entry")
    a = build_series(doc["a"], field.ring)
    budget = opts.get("budget") or int(doc.get("budget", 16))
    cls = classify(ASInstance(a, field), budget)
    exp = doc.get("expected", {})
    checks = []
    for key, actual in (
        ("kind", cls.kind.value),
        ("distance", None if cls.distance is None else str(cls.distance)),
        ("dependence", None if cls.dependence is None else cls.dependence.value),
    ):
        if key in exp:
            checks.append(_check(key, exp[key], actual))
    ok = all(c["ok"] for c in checks)
    report = {
        "command": "classify",
        "input": str(args.file),
        "field": field.to_json(),
        "a": str(a),
        "classification": cls.to_json(),
        "checks": checks,
        "ok": ok,
    }
    return report, EXIT_OK if ok else EXIT_MISMATCH


def cmd_cut(args) -> tuple[dict, int]:
    p = args.p or 2
    desc = GroupDesc(p, tuple(c.strip() for c in args.group.split(","))) if args.group else None
    r = parse_cut_expr(args.expression, desc, p)
    report = {"command": "cut", "expression": args.expression}
    if r.value is not None:
        report.update({"result": str(r.value), "cut": r.value.to_json(), "idempotent": is_idempotent(r.value)})
    else:
        order = cut_compare(r.left, r.right)
        report.update({
            "left": str(r.left),
            "right": str(r.right),
            "op": r.op,
            "result": r.truth,
            "order": {Ordering.LT: "<", Ordering.EQ: "=", Ordering.GT: ">"}[order],
        })
    return report, EXIT_OK


def cmd_deform(args) -> tuple[dict, int]:
    doc = load_document(args.file) if args.file else {}
    p = args.p or int(doc.get("p", 2))
    opts = _opts(args)
    field = build_field(doc.get("field", {"kind": args.field or "tower"}), p, args.m or 1, args.depth)
    a = build_series(args.a or doc.get("a", "1/t"), field.ring)
    sweep = args.vb.split(",") if args.vb else [str(x) for x in doc.get("sweep", ["-2", "-1", "0", "1", "2"])]
    budget = opts.get("budget") or int(doc.get("budget", 16))
    rows = []
    checks = []
    for vb in sweep:
        r = deform(DeformationQuery.with_value(a, field, to_fraction(vb.strip())), budget, opts.get("precision"))
        rows.append(_sweep_row(vb.strip(), r))
        checks.append(_check(f"vb={vb.strip()} similarity matches condition", r.condition_holds, r.similarity_verified))
    ok = all(c["ok"] for c in checks)
    report = {
        "command": "deform",
        "field": field.to_json(),
        "a": str(a),
        "rows": rows,
        "checks": checks,
        "ok": ok,
    }
    return report, EXIT_OK if ok else EXIT_MISMATCH


def cmd_probe(args) -> tuple[dict, int]:
    p = args.p or 2
    field = build_field({"kind": args.field}, p, args.m or 1, args.depth)
    poly = parse_poly(args.expression, field.ring)
    form = _probe_form(poly, field)
    res = extremality_probe(form, field, args.budget or 16)
    report = {
        "command": "probe",
        "expression": args.expression,
        "form": form.describe(),
        "field": field.to_json(),
        "outcome": res.outcome.value,
        "note": res.note,
        "values": [_fmt_value(v) for v in res.values],
        "probe": res.to_json(),
    }
    return report, EXIT_OK


def _probe_form(poly: dict, field):
    p = field.p
    ring = field.ring
    degrees = set(poly)
    if degrees <= {0, p} and p in degrees:
        b = poly.get(0, ring.zero())
        return InseparableForm(b, (-poly[p],))
    if degrees <= {0, 1, p} and {1, p} <= degrees:
        if poly[p] == ring.one() and poly[1] == -ring.one():
            return PForm(-poly.get(0, ring.zero()))
    raise InputError("supported forms: b - c*X^p and X^p - X - a")


def _opts(args) -> dict:
    prec = getattr(args, "precision", None)
    return {
        "p": getattr(args, "p", None),
        "m": getattr(args, "m", None),
        "budget": getattr(args, "budget", None),
        "precision": Fraction(prec) if prec else None,
        "depth": getattr(args, "depth", None),
    }


# -- entry point ---------------------------------------------------------------------


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, help="characteristic (prime)")
    parser.add_argument("--m", type=int, help="coefficient field degree over F_p")
    parser.add_argument("--budget", type=int, help="maximum number of reduction steps")
    parser.add_argument("--precision", help="working precision (an exponent), where applicable")
    parser.add_argument("--json", action="store_true", help="print the JSON report")
    parser.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="defectlab", description="Artin-Schreier defect calculations")
    parser.add_argument("--version", action="version", version=f"defectlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("example", help="run a bundled scenario")
    ex.add_argument("name", nargs="?", help="scenario name")
    ex.add_argument("--all", action="store_true", help="run every bundled scenario")
    ex.add_argument("--jobs", type=int, default=1, help="parallel workers for --all")
    ex.add_argument("--depth", type=int, help="tower depth override")
    ex.add_argument("--list", action="store_true", help="list scenario names")
    _common(ex)

    cl = sub.add_parser("classify", help="classify X^p - X - a from a TOML or JSON file")
    cl.add_argument("file")
    cl.add_argument("--depth", type=int)
    _common(cl)

    cu = sub.add_parser("cut", help="evaluate a cut expression")
    cu.add_argument("expression")
    cu.add_argument("--group", help="coordinate kinds, e.g. Z,Q (default: Q^r)")
    _common(cu)

    de = sub.add_parser("deform", help="sweep the deformation parameter vb")
    de.add_argument("file", nargs="?")
    de.add_argument("--a", help="right-hand side a = eta^p (default 1/t)")
    de.add_argument("--vb", help="comma separated values of b")
    de.add_argument("--field", choices=["tower", "perfect", "rational"])
    de.add_argument("--depth", type=int)
    _common(de)

    pr = sub.add_parser("probe", help="extremality probe of b - X^p or X^p - X - a")
    pr.add_argument("expression")
    pr.add_argument("--field", choices=["tower", "perfect", "rational"], default="tower")
    pr.add_argument("--depth", type=int)
    _common(pr)
    return parser


COMMANDS = {
    "example": cmd_example,
    "classify": cmd_classify,
    "cut": cmd_cut,
    "deform": cmd_deform,
    "probe": cmd_probe,
}


def _summary(report: dict) -> str:
    lines = []
    for s in report.get("scenarios", [report]):
        if "scenario" in s:
            lines.append(f"{s['scenario']}: {'ok' if s['ok'] else 'FAILED'}")
            for run in s.get("runs", []):
                for c in run.get("checks", []):
                    mark = "ok  " if c["ok"] else "FAIL"
                    lines.append(f"  p={run['p']} {mark} {c['name']}")
                    if not c["ok"]:
                        lines.append(f"         expected {c['expected']}")
                        lines.append(f"         actual   {c['actual']}")
                if "error" in run:
                    lines.append(f"  p={run['p']} error: {run['error']['message']}")
    if report.get("command") == "cut":
        lines.append(str(report["result"]))
    elif report.get("command") == "classify":
        cls = report["classification"]
        lines.append(f"{cls['kind']} {cls.get('distance') or ''} {cls.get('dependence') or ''}".strip())
        for c in report["checks"]:
            if not c["ok"]:
                lines.append(f"FAIL {c['name']}: expected {c['expected']}, got {c['actual']}")
    elif report.get("command") == "deform":
        for row in report["rows"]:
            lines.append(
                f"vb={row['vb']}: condition={row['condition_holds']} similar={row['similarity_verified']} "
                f"{row['kind']} {row['distance'] or ''}".rstrip()
            )
    elif report.get("command") == "probe":
        lines.append(f"{report['outcome']}: {', '.join(report['values'])}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "example" and args.list:
        print("\n".join(scenario_names()))
        return EXIT_OK
    try:
        report, code = COMMANDS[args.command](args)
    except ParseError as exc:
        report, code = {"command": args.command, "error": _error_json(exc)}, EXIT_INPUT
    except _PRECISION_ERRORS as exc:
        report, code = {"command": args.command, "error": _error_json(exc)}, EXIT_PRECISION
    except (DefectLabError, ValueError, KeyError, TypeError) as exc:
        report, code = {"command": args.command, "error": _error_json(exc)}, EXIT_INPUT
    report["schema"] = SCHEMA
    report["exit_code"] = code
    if not args.no_timestamp:
        report["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    if "error" in report:
        print(f"defectlab: {report['error']['message']}", file=sys.stderr)
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    elif "error" not in report:
        print(_summary(report))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
