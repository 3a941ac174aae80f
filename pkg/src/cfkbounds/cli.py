"""
Command-line front end.

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 the input is
not a knot complex (stable slices or hat homology have the wrong shape).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from math import gcd
from pathlib import Path

from . import builders
from .complex import (
    Bigrading,
    KnotComplex,
    dual,
    dump_complex,
    parse_complex,
    reduce,
    tensor,
    validate,
)
from .errors import NotAKnotComplex, ValidationError
from .invariants import (
    InvariantReport,
    alt_lower,
    gordian_lower,
    summand_report,
    torus_adjacency_check,
    unknotting_report,
)

EXAMPLE_NAMES = "unknot, trefoil, figure8, torus:p:q, alt:tau:k, 12n404C, cableA, cableB, sumC, cij:i:j"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_example(spec: str) -> KnotComplex:
    """Build a complex from an example spec such as ``torus:3:4``."""
    fixed = {
        "unknot": builders.unknot,
        "trefoil": lambda: builders.torus_knot(2, 3),
        "figure8": builders.figure_eight,
        "12n404C": builders.example_12n404_summand,
        "cableA": builders.example_cable_2_3_2_neg1,
        "cableB": builders.example_neg_cable_2_3_2_neg3,
        "sumC": builders.example_sum_summand_C,
    }
    if spec in fixed:
        return fixed[spec]()
    m = re.fullmatch(r"torus:(\d+):(\d+)", spec)
    if m:
        p, q = int(m[1]), int(m[2])
        if not (1 <= p < q) or gcd(p, q) != 1:
            raise UsageError(f"torus:{p}:{q} needs coprime 1 <= p < q")
        return builders.torus_knot(p, q)
    m = re.fullmatch(r"alt:(-?\d+):(\d+)", spec)
    if m:
        tau, k = int(m[1]), int(m[2])
        # squares sit at Alexander grading 0 on the staircase's diagonal mu - A = -tau
        return builders.alternating_model(tau, [Bigrading(-tau, 0)] * k)
    m = re.fullmatch(r"cij:(\d+):(\d+)", spec)
    if m:
        i, j = int(m[1]), int(m[2])
        if i < 1 or j < 1:
            raise UsageError("cij:i:j needs i, j >= 1")
        return builders.virtual_Cij(i, j)
    raise UsageError(f"unknown example {spec!r}; expected one of: {EXAMPLE_NAMES}, or file:PATH")


def read_file(path: str) -> tuple[KnotComplex, bool]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_complex(text, return_inferred=True)


def resolve(spec: str) -> KnotComplex:
    """Example spec, or ``file:PATH`` for a complex file."""
    if spec.startswith("file:"):
        return read_file(spec[5:])[0]
    return build_example(spec)


class _OpAction(argparse.Action):
    """Collect ``--sum`` / ``--mirror`` in command-line order."""

    def __call__(self, parser, namespace, values, option_string=None):
        ops = list(getattr(namespace, "ops", None) or [])
        # a bare --mirror receives const, which is None
        ops.append((option_string.lstrip("-"), values))
        namespace.ops = ops


def _add_source(p: argparse.ArgumentParser, required: bool = False):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--example", metavar="SPEC", help=f"built-in complex: {EXAMPLE_NAMES}")
    g.add_argument("--file", metavar="PATH", help="complex in the text format")
    p.add_argument(
        "--sum", metavar="SPEC", action=_OpAction, dest="ops", default=[],
        help="connected sum with another complex (repeatable)",
    )
    p.add_argument(
        "--mirror", metavar="SPEC", nargs="?", action=_OpAction, dest="ops",
        help="with SPEC: sum with the mirror of SPEC; alone: mirror everything so far",
    )


def load_source(args) -> tuple[KnotComplex, str]:
    if args.file:
        K, _ = read_file(args.file)
        desc = [f"file:{args.file}"]
    elif args.example:
        K = build_example(args.example)
        desc = [args.example]
    else:
        K, desc = None, []
    for kind, spec in args.ops or []:
        if kind == "sum":
            K = resolve(spec) if K is None else tensor(K, resolve(spec))
            desc.append(f"sum:{spec}")
        elif spec is None:
            if K is None:
                raise UsageError("--mirror without an argument needs a complex before it")
            K = dual(K)
            desc.append("mirror")
        else:
            M = dual(resolve(spec))
            K = M if K is None else tensor(K, M)
            desc.append(f"mirror:{spec}")
    if K is None:
        raise UsageError("no input: give --example, --file, --sum or --mirror")
    return K, " ".join(desc)


def report_to_json(report: InvariantReport, source: str, extra: dict | None = None) -> str:
    d = report.to_dict()
    d["source"] = source
    d.update(extra or {})
    return json.dumps(d, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def report_from_json(text: str) -> tuple[InvariantReport, str]:
    d = json.loads(text)
    return InvariantReport.from_dict(d), d["source"]


def _fmt_seq(seq) -> str:
    return "(" + ", ".join(str(x) for x in seq) + ")"


def report_to_text(r: InvariantReport, source: str) -> str:
    rows = [
        ("source", source),
        ("genus upper bound", r.genus_upper),
        ("nu-", r.nu_minus),
        ("nu- (mirror)", r.nu_minus_mirror),
        ("ideal sequence", _fmt_seq(r.ideal_seq)),
        ("ideal sequence (mirror)", _fmt_seq(r.ideal_seq_mirror)),
        ("a(K)", r.frak_a),
        ("t-", r.t_minus),
        ("t+", r.t_plus),
        ("t", r.t),
        ("t-hat", r.t_hat),
        ("t-hat (mirror)", r.t_hat_mirror),
        ("u- lower bound", r.u_minus_lower),
        ("u+ lower bound", r.u_plus_lower),
        ("u lower bound", f"{r.u_lower}  [{r.u_certificate}]"),
        ("alt lower bound", f"{r.alt_lower}  [{r.alt_certificate}]"),
    ]
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k:<{width}}  {v}\n" for k, v in rows)


def _emit(args, text: str):
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_report(args) -> int:
    K, source = load_source(args)
    start = time.perf_counter()
    extra = {}
    if args.summand:
        d = summand_report(K)
        d["source"] = source
        if args.timing:
            d["timing_seconds"] = round(time.perf_counter() - start, 6)
        if args.json:
            _emit(args, json.dumps(d, sort_keys=True, indent=2) + "\n")
        else:
            lines = [f"{k}: {v}" for k, v in sorted(d.items()) if k != "torsion_generators"]
            for g in d["torsion_generators"]:
                ann = " + ".join(f"u^{a}w^{b}" for a, b in g["annihilator"])
                lines.append(f"torsion generator at A={g['level']}: annihilator <{ann}>")
            _emit(args, "\n".join(lines) + "\n")
        return 0
    report = unknotting_report(K)
    if args.timing:
        extra["timing_seconds"] = round(time.perf_counter() - start, 6)
    if args.json:
        _emit(args, report_to_json(report, source, extra))
    else:
        text = report_to_text(report, source)
        if args.timing:
            text += f"time  {extra['timing_seconds']}s\n"
        _emit(args, text)
    return 0


def cmd_validate(args) -> int:
    if args.file:
        K, inferred = read_file(args.file)
    else:
        K, inferred = load_source(args)[0], False
    validate(K, nonempty=True)
    R = reduce(K)
    alex = [g.alexander for g in R.gradings]
    if sorted(alex) != sorted(-a for a in alex):
        raise ValidationError("Alexander gradings of the reduced complex are not symmetric")
    out = f"ok: {len(K)} generators, {len(K.arrows)} arrows, {len(R)} after reduction\n"
    if inferred:
        out += "inferred gradings:\n" + dump_complex(K)
    _emit(args, out)
    return 0


def cmd_bound(args) -> int:
    if args.kind == "alt":
        K, source = load_source(args)
        b = alt_lower(K)
        payload = {"bound": "alt", "source": source, "value": b.value, "certificate": b.certificate, "terms": b.terms}
    elif args.kind == "gordian":
        if not args.a or not args.b:
            raise UsageError("bound gordian needs --a SPEC and --b SPEC")
        b = gordian_lower(resolve(args.a), resolve(args.b))
        payload = {"bound": "gordian", "a": args.a, "b": args.b, "value": b.value,
                   "certificate": b.certificate, "terms": b.terms}
    else:
        if len(args.params) != 4:
            raise UsageError("bound adjacency needs four integers p p' q q'")
        p, p2, q, q2 = args.params
        try:
            res = torus_adjacency_check(p, p2, q, q2)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        payload = {
            "bound": "adjacency", "source": f"T({p},{p2}) -> T({q},{q2})",
            "value": "pass" if res.passed else "fail", "u": res.u,
            "first_holds": res.first_holds, "second_holds": res.second_holds,
            "witnesses": {k: [list(g) for g in v] for k, v in res.witnesses.items()},
            "certificate": res.reason or "both containments hold",
        }
    if args.json:
        text = json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    elif payload["bound"] == "adjacency":
        text = f"adjacency {payload['source']}: {payload['value']} (u = {payload['u']}; {payload['certificate']})\n"
    else:
        text = f"{payload['bound']} lower bound: {payload['value']}  [{payload['certificate']}]\n"
    _emit(args, text)
    return 0


def cmd_compose(args) -> int:
    K, source = load_source(args)
    validate(K)
    _emit(args, dump_complex(K, header=f"composed: {source}"))
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cfkbounds", description="Knot Floer complex invariants and unknotting bounds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("report", help="compute every invariant and bound")
    _add_source(p)
    p.add_argument("--summand", action="store_true", help="torsion-only report for a direct summand")
    p.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identical output)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("validate", help="check homogeneity, d^2 = 0 and Alexander symmetry")
    _add_source(p)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bound", help="alternation, Gordian or torus adjacency bound")
    p.add_argument("kind", choices=["alt", "gordian", "adjacency"])
    p.add_argument("params", nargs="*", type=int, help="p p' q q' for adjacency")
    _add_source(p)
    p.add_argument("--a", metavar="SPEC")
    p.add_argument("--b", metavar="SPEC")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("compose", help="write a connected sum / mirror as a complex file")
    _add_source(p)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_compose)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"cfkbounds: error: {exc}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"cfkbounds: invalid complex: {exc}", file=sys.stderr)
        return 2
    except NotAKnotComplex as exc:
        print(f"cfkbounds: not a knot complex: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
