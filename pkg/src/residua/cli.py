"""Command-line front end.

Every command builds an ordered report that is printed either as
``key: value`` lines or, with ``--format json``, as a JSON object in which
half-integers appear as {"num": n, "den": 1 or 2}.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .dynkin import (
    Partition,
    ResidualSegment,
    WeightedDynkinDiagram,
    distinguished_partitions,
    format_values,
    partition_to_segment,
    segment_to_wdd,
    wdd_to_segment,
)
from .intertwine import classify_case, path_nongeneric
from .langlands import SegmentMultiset, langlands_param, leq_order, minimize
from .orbits import OrbitContext, c1, dominant_rep, enumerate_L
from .projections import (
    ThetaSubset,
    block_sizes,
    classify_components,
    format_vector,
    length_changes,
    project_roots,
    theta_condition,
    uniqueway_coefficients,
)
from .rootsys import HalfInt, Parameter, ResiduaError, RootSystemSpec
from .segments import CuspidalString, is_residual_point, jordan_of, jumps_of, residual_defect, segment_from_jumps
from .verify import SWEEPS, run_suite

Report = dict[str, Any]


# -- rendering ----------------------------------------------------------------

def _text_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Parameter):
        return format_values(value)
    if isinstance(value, (list, tuple)):
        return ",".join(_text_value(v) for v in value)
    return str(value)


def render_text(report: Report) -> str:
    """Scalars and number lists on one line; string lists and rows one per line."""
    lines = []
    for key, value in report.items():
        if isinstance(value, list) and not isinstance(value, Parameter) and any(
            isinstance(v, (dict, str)) for v in value
        ):
            lines.append(f"{key}:")
            for item in value:
                if isinstance(item, dict):
                    item = "  ".join(f"{k}={_text_value(v)}" for k, v in item.items())
                lines.append(f"  {item}")
        else:
            lines.append(f"{key}: {_text_value(value)}")
    return "\n".join(lines)


def _json_value(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, HalfInt):
        f = value.as_fraction()
        return {"num": f.numerator, "den": f.denominator}
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return value


def render_json(report: Report) -> str:
    return json.dumps(_json_value(report), indent=2)


# -- argument helpers -----------------------------------------------------------

def _spec(args: argparse.Namespace, length: int | None = None) -> RootSystemSpec:
    rank = args.rank
    if rank is None:
        if length is None:
            raise ResiduaError("--rank is required")
        rank = length - 1 if args.type == "A" else length
    spec = RootSystemSpec(args.type, rank)
    if length is not None and length != spec.dim:
        raise ResiduaError(f"dimension mismatch: {length} entries for {spec}")
    return spec


def _ctx(args: argparse.Namespace, length: int | None = None) -> OrbitContext:
    return OrbitContext(_spec(args, length), getattr(args, "eps", None))


def _int_list(text: str) -> list[int]:
    text = text.strip().strip("{}[]()")
    items = [t for t in text.replace(" ", ",").split(",") if t]
    if len(items) == 1 and items[0].isdigit() and len(items[0]) > 1 and "," not in text:
        return [int(c) for c in items[0]]
    try:
        return [int(t) for t in items]
    except ValueError:
        raise ResiduaError(f"expected a list of integers, got {text!r}") from None


def _read_arg(value: str | None) -> str:
    if value is None or value == "-":
        data = sys.stdin.read().strip()
        if not data:
            raise ResiduaError("no input given")
        return data
    return value


def _strip_label(text: str, *keys: str) -> str:
    """Accept command output such as "jumps: {5,4,2}" as input, picking the line for ``keys``."""
    for line in text.splitlines():
        key, sep, rest = line.partition(":")
        if sep and key.strip() in keys:
            return rest.strip()
    return text.strip()


def _string(args: argparse.Namespace, text: str) -> CuspidalString:
    if "@" not in text:
        text = f"{text}@{args.type}"
    s = CuspidalString.parse(text)
    if s.kind != args.type:
        raise ResiduaError("string kind differs from --type")
    return s


# -- commands -----------------------------------------------------------------

def cmd_orbits(args: argparse.Namespace) -> Report:
    spec = _spec(args)
    rows = []
    for p in distinguished_partitions(spec):
        seg = partition_to_segment(p)
        row: Report = {"partition": str(p), "segment": seg.values}
        if spec.kind != "A":
            row["jumps"] = list(jumps_of(seg))
        rows.append(row)
    return {"system": str(spec), "count": len(rows), "orbits": rows}


def cmd_segment(args: argparse.Namespace) -> Report:
    kind = args.type
    if args.action == "from-partition":
        p = Partition(tuple(_int_list(_strip_label(_read_arg(args.value), "partition", "jordan"))), kind)
        seg = partition_to_segment(p)
        return {"partition": str(p), "segment": seg.values}
    if args.action == "from-jumps":
        text = _strip_label(_read_arg(args.value), "jumps").strip("{}")
        jumps = Parameter.parse(text) if text else Parameter(())
        seg = segment_from_jumps(kind, jumps)
        return {"jumps": list(jumps), "segment": seg.values}
    if args.action == "from-wdd":
        labels = _int_list(_strip_label(_read_arg(args.value), "labels"))
        rank = args.rank if args.rank is not None else len(labels)
        seg = wdd_to_segment(WeightedDynkinDiagram(RootSystemSpec(kind, rank), tuple(labels)))
        return {"labels": labels, "segment": seg.values}
    seg = ResidualSegment(kind, Parameter.parse(_strip_label(_read_arg(args.value), "segment")))
    if args.action == "to-jumps":
        return {"segment": seg.values, "jumps": "{" + ",".join(str(j) for j in jumps_of(seg)) + "}",
                "jordan": str(jordan_of(seg))}
    return {"segment": seg.values, "labels": list(segment_to_wdd(seg).labels)}


def cmd_residual(args: argparse.Namespace) -> Report:
    lam = Parameter.parse(args.vector)
    ctx = _ctx(args, len(lam))
    return {
        "parameter": lam,
        "residual": is_residual_point(ctx.spec, ctx.epsilon, lam),
        "count": residual_defect(ctx.spec, ctx.epsilon, lam),
        "rank": ctx.spec.rank,
    }


def cmd_order(args: argparse.Namespace) -> Report:
    if args.action == "compare":
        mu, pi = Parameter.parse(args.mu), Parameter.parse(args.pi)
        return {"mu": mu, "pi": pi, "leq": leq_order(args.type or "B", mu, pi)}
    m = SegmentMultiset.parse(args.multiset)
    low = minimize(m)
    return {"input": str(m), "minimal": str(low), "parameter": langlands_param(low)}


def cmd_dominant(args: argparse.Namespace) -> Report:
    lam = Parameter.parse(args.vector)
    ctx = _ctx(args, len(lam))
    dom, w = dominant_rep(ctx, lam)
    return {"parameter": lam, "dominant": dom, "perm": list(w.perm), "signs": list(w.signs)}


def cmd_c1(args: argparse.Namespace) -> Report:
    lam = Parameter.parse(args.vector)
    ctx = _ctx(args, len(lam))
    return {"parameter": lam, "c1": c1(ctx, lam)}


def cmd_enumerate_l(args: argparse.Namespace) -> Report:
    values = Parameter.parse(args.segment)
    ctx = _ctx(args, len(values))
    family = enumerate_L(ctx, values)
    jumps = list(jumps_of(ResidualSegment(ctx.kind, values)))
    rows = []
    for s in family:
        row: Report = {"string": str(s), "c1": c1(ctx, s.flatten())}
        if s.linear:
            a, b = s.linear[0].a, s.linear[0].b
            k = jumps.index(a) if a in jumps else None
            row["peak"] = k is not None and k + 1 < len(jumps) and b == -jumps[k + 1]
        rows.append(row)
    return {"jumps": "{" + ",".join(str(j) for j in jumps) + "}", "count": len(rows), "strings": rows}


def cmd_path(args: argparse.Namespace) -> Report:
    src, dst = _string(args, args.src), _string(args, args.dst)
    ctx = _ctx(args, len(src.flatten()))
    moves = path_nongeneric(ctx, src, dst, search=args.search)
    if moves is None:
        raise ResiduaError("no path of non-generic moves found by the constructive procedure")
    return {"src": str(src), "dst": str(dst), "length": len(moves), "moves": [str(m) for m in moves]}


def cmd_classify(args: argparse.Namespace) -> Report:
    s = _string(args, args.string)
    ctx = _ctx(args, len(s.flatten()))
    tag = classify_case(ctx, s)
    return {"string": str(s), "case": tag.tag, "verdict": tag.verdict, "assumptions": list(tag.assumptions)}


def cmd_project(args: argparse.Namespace) -> Report:
    spec = _spec(args)
    theta = ThetaSubset.from_kept(spec, _int_list(args.theta) if args.theta else [])
    p = classify_components(project_roots(theta))
    uniqueway_coefficients(p)
    comps = p.components or ()
    label = " + ".join(c.label for c in comps) or "none"
    total = sum(c.rank for c in comps)
    relation = "=" if total == theta.d else "<"
    report: Report = {
        "system": str(spec),
        "theta": list(theta.kept),
        "removed": sorted(theta.removed),
        "d": theta.d,
        "block_sizes": block_sizes(theta),
        "theta_condition": theta_condition(theta),
        "length_changes": length_changes(theta),
        "projections": len(p.roots),
        "components": f"{label} (rank {total} {relation} d)",
    }
    if args.verbose:
        report["vectors"] = [format_vector(v) for v in p.sigma_theta]
    return report


def cmd_verify(args: argparse.Namespace) -> Report:
    names = args.only.split(",") if args.only else None
    if names and any(n not in SWEEPS for n in names):
        raise ResiduaError(f"unknown sweep; choose from {','.join(SWEEPS)}")
    results = run_suite(args.max_rank, jobs=args.jobs, names=names)
    rows = [{"sweep": r.name, "cases": r.cases, "failures": len(r.failures), "status": "pass" if r.ok else "FAIL"}
            for r in results]
    report: Report = {"max_rank": args.max_rank, "results": rows}
    failed = [f"{r.name}: {f}" for r in results for f in r.failures[:5]]
    if failed:
        report["first_failures"] = failed
    report["ok"] = all(r.ok for r in results)
    return report


# -- parser ---------------------------------------------------------------------

def _env_max_rank() -> int:
    raw = os.environ.get("RESIDUA_MAX_RANK")
    try:
        return int(raw) if raw else 5
    except ValueError:
        return 5


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    typed = argparse.ArgumentParser(add_help=False, parents=[common])
    typed.add_argument("--type", choices=("A", "B", "C", "D"), required=True)
    typed.add_argument("--rank", type=int)

    parser = argparse.ArgumentParser(prog="residua", description="Residual points and segments of classical root systems.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbits", parents=[typed], help="distinguished partitions and their segments")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("segment", help="convert between segment encodings")
    ssub = p.add_subparsers(dest="action", required=True)
    for action in ("from-partition", "to-jumps", "from-jumps", "to-wdd", "from-wdd"):
        q = ssub.add_parser(action, parents=[typed])
        q.add_argument("value", nargs="?", help="input value; read from stdin when omitted")
        q.set_defaults(func=cmd_segment)

    p = sub.add_parser("residual-check", parents=[typed], help="counting test for a residual point")
    p.add_argument("--eps", help="parameter on the short root (1 for B, 1/2 for C)")
    p.add_argument("vector")
    p.set_defaults(func=cmd_residual)

    p = sub.add_parser("order", parents=[common], help="order on Langlands parameters")
    osub = p.add_subparsers(dest="action", required=True)
    q = osub.add_parser("compare", parents=[common])
    q.add_argument("--type", choices=("A", "B", "C", "D"))
    q.add_argument("mu")
    q.add_argument("pi")
    q.set_defaults(func=cmd_order)
    q = osub.add_parser("minimize", parents=[common])
    q.add_argument("multiset", help='segments such as "(3,1)|(2,0)"')
    q.set_defaults(func=cmd_order)

    for name, func, helptext in (
        ("dominant", cmd_dominant, "dominant representative and a Weyl element reaching it"),
        ("c1", cmd_c1, "number of positive roots pairing negatively"),
    ):
        p = sub.add_parser(name, parents=[typed], help=helptext)
        p.add_argument("vector")
        p.set_defaults(func=func)

    p = sub.add_parser("enumerate-L", parents=[typed], help="one-segment strings in a residual orbit")
    p.add_argument("segment")
    p.set_defaults(func=cmd_enumerate_l)

    p = sub.add_parser("path", parents=[typed], help="non-generic intertwining moves between strings")
    p.add_argument("src")
    p.add_argument("dst")
    p.add_argument("--search", action="store_true", help="fall back to breadth-first search")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("classify", parents=[typed], help="case of a one-segment string")
    p.add_argument("string")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("project", parents=[typed], help="projected roots and contained root systems")
    p.add_argument("--theta", required=True, help="kept simple roots, 1-based, e.g. 1,3")
    p.add_argument("--verbose", action="store_true", help="list the projected vectors")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("verify-suite", parents=[common], help="run the exhaustive consistency sweeps")
    p.add_argument("--max-rank", type=int, default=_env_max_rank())
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--only", help="comma-separated subset of sweeps")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except ResiduaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(render_json(report) if args.format == "json" else render_text(report))
    if args.command == "verify-suite" and not report["ok"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
