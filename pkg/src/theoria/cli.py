"""Command-line front end.

Every subcommand prints one report.  With ``--format json`` (the default)
the report is a JSON object with the keys ``command``, ``inputs`` (SHA-256
of every file read), ``result`` and ``exit_code``; the wall-clock duration
goes to stderr so that stdout is byte-identical across runs.

Exit codes: 0 all checks pass or a witness was found, 1 a check failed or no
witness exists, 2 usage or input error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from typing import Any, Sequence

from . import geometry as geo
from . import intertheoretic as it
from . import theory as th
from . import worlds as wd
from .axioms import AxiomError, AxiomId, check_axiom, check_extensive_structure
from .structure import Structure, StructureError, build_structure, render

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


class _Inputs:
    """Reads input files and remembers their digests."""

    def __init__(self):
        self.digests: dict[str, str] = {}

    def read(self, path: str) -> bytes:
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        self.digests[path] = hashlib.sha256(data).hexdigest()
        return data

    def structure(self, path: str) -> Structure:
        try:
            return build_structure(self.read(path))
        except StructureError as exc:
            raise InputError(f"{path}: {exc}") from None

    def figure(self, path: str) -> geo.Gebilde:
        data = self.read(path)
        try:
            return geo.gebilde_from_dict(json.loads(data))
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None
        except geo.GeometryError as exc:
            raise InputError(f"{path}: {exc}") from None

    def theory(self, ref: str) -> th.TheoryElement:
        if ref in th.PRESETS:
            return th.PRESETS[ref]
        data = self.read(ref)
        try:
            return th.theory_from_dict(json.loads(data))
        except json.JSONDecodeError as exc:
            raise InputError(f"{ref}: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None
        except (th.SignatureError, AxiomError) as exc:
            raise InputError(f"{ref}: {exc}") from None


# -- subcommands ------------------------------------------------------------------
# Each returns (result, exit code).


def _cmd_make_world(args, inputs):
    if args.kind == "counting":
        s = wd.make_counting_world(args.words if args.words else args.size)
    elif args.kind == "pps":
        base = wd.make_counting_world(args.words if args.words else args.size)
        s = wd.make_pps_world(base, args.zero)
    elif args.kind == "money":
        s = wd.make_money_world(args.coins, args.max_value, strict=not args.reflexive)
    else:
        s = wd.make_decade_world(args.max_decade, strict=not args.reflexive)
    return {"structure": json.loads(render(s))}, EXIT_OK


def _stage_check(te, s, stage):
    if stage == "partial":
        return th.check_partial_model(te, s)
    if stage == "potential":
        return th.check_potential_model(te, s)
    return th.check_model(te, s)


def _cmd_check(args, inputs):
    structures = [(p, inputs.structure(p)) for p in args.structure]
    checks = []
    ok = True
    if args.preset or args.theory:
        te = inputs.theory(args.preset or args.theory)
        for path, s in structures:
            v = _stage_check(te, s, args.stage)
            checks.append({"structure": path, "theory": te.name, **v.to_dict()})
            ok &= v.passed
        if args.constraint:
            rep = th.check_constraint(te, [s for _, s in structures])
            checks.append({"constraint": te.constraint, **rep.to_dict()})
            ok &= rep.passed
    for text in args.axiom:
        a = AxiomId.parse(text)
        for path, s in structures:
            rep = check_axiom(s, a)
            checks.append({"structure": path, **rep.to_dict()})
            ok &= rep.passed
    if args.extensive:
        order, _, op = args.extensive.partition(",")
        if not op:
            raise InputError("--extensive expects ORDER,OP")
        for path, s in structures:
            for rep in check_extensive_structure(s, order, op, args.archimedean_bound):
                checks.append({"structure": path, **rep.to_dict()})
                ok &= rep.passed
    if not checks:
        raise InputError("nothing to check: give --preset/--theory, --axiom or --extensive")
    return {"pass": ok, "checks": checks}, EXIT_OK if ok else EXIT_FAIL


def _witness_result(w):
    if w is None:
        return {"found": False, "witness": None}, EXIT_FAIL
    return {"found": True, "witness": w.to_dict()}, EXIT_OK


def _cmd_series_world(args, inputs):
    parts = [inputs.structure(p) for p in args.parts]
    whole = inputs.structure(args.whole)
    return _witness_result(it.find_series_world_morphism(parts, whole, args.budget))


def _cmd_specialization(args, inputs):
    part, whole = inputs.structure(args.part), inputs.structure(args.whole)
    return _witness_result(it.find_series_world_morphism([part], whole, args.budget))


def _cmd_conform(args, inputs):
    worlds = [inputs.structure(p) for p in args.worlds]
    shared = [s.split("=") if "=" in s else s for s in args.shared]
    try:
        out = it.check_conform(worlds, shared)
    except it.ConformError as exc:
        raise InputError(str(exc)) from None
    if isinstance(out, it.Incompatibility):
        return {"conform": False, "certificate": out.to_dict()}, EXIT_FAIL
    return {"conform": True, "witness": out.to_dict()}, EXIT_OK


def _cmd_theoretization(args, inputs):
    lower, upper = inputs.theory(args.lower), inputs.theory(args.upper)
    witnesses = [inputs.structure(p) for p in args.witnesses]
    rep = it.check_theoretization(lower, upper, witnesses)
    return rep.to_dict(), EXIT_OK if rep.passed else EXIT_FAIL


def _cmd_zgl(args, inputs):
    u, v = inputs.figure(args.u), inputs.figure(args.v)
    d = geo.zgl(u, v)
    result = {
        "area_u": geo.format_area(geo.area(u)),
        "area_v": geo.format_area(geo.area(v)),
        "zgl": d is not None,
        "dissection": d.to_dict() if d is not None else None,
    }
    return result, EXIT_OK if d is not None else EXIT_FAIL


def _cmd_compare(args, inputs):
    u, v = inputs.figure(args.u), inputs.figure(args.v)
    out = geo.compare(u, v)
    result: dict[str, Any] = {"relation": type(out).__name__.lower()}
    if not isinstance(out, geo.Equal):
        result["sub"] = geo.gebilde_to_dict(out.sub)
    result["dissection"] = out.dissection.to_dict()
    return result, EXIT_OK


def _cmd_rectangle(args, inputs):
    u = inputs.figure(args.figure)
    try:
        rect, d = geo.to_rectangle(u)
    except geo.NormalFormUnavailable as exc:
        return {"rectangle": None, "reason": str(exc)}, EXIT_FAIL
    return {
        "area": geo.format_area(geo.area(u)),
        "rectangle": geo.gebilde_to_dict(rect),
        "dissection": d.to_dict(),
    }, EXIT_OK


def _cmd_measure(args, inputs):
    try:
        value = geo.mu(args.m, args.n)
    except geo.GeometryError as exc:
        raise InputError(str(exc)) from None
    return {"m": args.m, "n": args.n, "area": geo.format_area(value)}, EXIT_OK


def _cmd_tfv_check(args, inputs):
    figures = [inputs.figure(p) for p in args.figures]
    s = geo.build_tfv_structure(figures)
    v = th.check_model(th.TFV, s)
    result = v.to_dict()
    result["figures"] = {name: path for name, path in zip(s.carrier, args.figures)}
    if v.passed:
        derived = [check_axiom(s, AxiomId(k, ("prec",))) for k in ("asymmetric", "transitive")]
        result["derived"] = [r.to_dict() for r in derived]
        ok = all(r.passed for r in derived)
    else:
        ok = False
    result["pass"] = ok
    return result, EXIT_OK if ok else EXIT_FAIL


# -- text rendering ---------------------------------------------------------------------


def _text(command: str, result: Any) -> str:
    if command == "measure":
        return result["area"]
    if command == "make-world":
        return json.dumps(result["structure"], indent=2)
    lines = []

    def walk(obj, indent=""):
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v:
                    lines.append(f"{indent}{k}:")
                    walk(v, indent + "  ")
                else:
                    lines.append(f"{indent}{k}: {v}")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)):
                    lines.append(f"{indent}-")
                    walk(v, indent + "  ")
                else:
                    lines.append(f"{indent}- {v}")
        else:
            lines.append(f"{indent}{obj}")

    walk(result)
    return "\n".join(lines)


# -- parser -------------------------------------------------------------------------------


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--budget", type=_positive_int, default=None, help="search node limit (default 10^6)")
    common.add_argument("--archimedean-bound", type=_positive_int, default=16)

    parser = _Parser(prog="theoria", description="Check finite theory-elements and their relations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("make-world", parents=[common], help="emit a numeric world as JSON")
    p.add_argument("kind", choices=("counting", "pps", "money", "decade"))
    p.add_argument("--size", type=_positive_int, default=10, help="lexicon size for counting/pps")
    p.add_argument("--words", nargs="+", help="explicit lexicon for counting/pps")
    p.add_argument("--zero", default="0", help="zero symbol for pps")
    p.add_argument("--coins", type=_positive_int, nargs="+", default=[1, 5, 10, 20, 50])
    p.add_argument("--max-value", type=_positive_int, default=100)
    p.add_argument("--max-decade", type=_positive_int, default=90)
    p.add_argument("--reflexive", action="store_true", help="use leq instead of the strict lt")
    p.set_defaults(run=_cmd_make_world)

    p = sub.add_parser("check", parents=[common], help="check structures against a theory or axioms")
    p.add_argument("--structure", nargs="+", required=True)
    which = p.add_mutually_exclusive_group()
    which.add_argument("--preset", choices=sorted(th.PRESETS))
    which.add_argument("--theory", help="theory-element JSON document")
    p.add_argument("--stage", choices=("partial", "potential", "model"), default="model")
    p.add_argument("--constraint", action="store_true", help="also check the constraint across all structures")
    p.add_argument("--axiom", action="append", default=[], help="catalog axiom, e.g. transitive:leq")
    p.add_argument("--extensive", metavar="ORDER,OP", help="check the closed extensive structure axioms")
    p.set_defaults(run=_cmd_check)

    p = sub.add_parser("series-world", parents=[common], help="search embeddings of parts into a whole")
    p.add_argument("--parts", nargs="+", required=True)
    p.add_argument("--whole", required=True)
    p.set_defaults(run=_cmd_series_world)

    p = sub.add_parser("specialization", parents=[common], help="search an embedding of one world")
    p.add_argument("--part", required=True)
    p.add_argument("--whole", required=True)
    p.set_defaults(run=_cmd_specialization)

    p = sub.add_parser("conform", parents=[common], help="check conform modelling of worlds")
    p.add_argument("--worlds", nargs="+", required=True)
    p.add_argument(
        "--shared", nargs="+", required=True, help="shared name, or one name per world joined by '='"
    )
    p.set_defaults(run=_cmd_conform)

    p = sub.add_parser("theoretization", parents=[common], help="instance-level theoretization check")
    p.add_argument("--lower", required=True, help="preset name or theory JSON")
    p.add_argument("--upper", required=True, help="preset name or theory JSON")
    p.add_argument("--witnesses", nargs="*", default=[])
    p.set_defaults(run=_cmd_theoretization)

    for name, fn, helptext in (
        ("zgl", _cmd_zgl, "decide equidecomposability of two figures"),
        ("compare", _cmd_compare, "compare the areas of two figures"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("u")
        p.add_argument("v")
        p.set_defaults(run=fn)

    p = sub.add_parser("rectangle", parents=[common], help="normalise a figure to a strip")
    p.add_argument("figure")
    p.set_defaults(run=_cmd_rectangle)

    p = sub.add_parser("measure", parents=[common], help="area of an m x n rectangle")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(run=_cmd_measure)

    p = sub.add_parser("tfv-check", parents=[common], help="model check the area-comparison theory")
    p.add_argument("--figures", nargs="+", required=True)
    p.set_defaults(run=_cmd_tfv_check)
    return parser


def run(argv: Sequence[str]) -> tuple[dict[str, Any], int]:
    """Parse ``argv``, run the subcommand and return ``(report, exit code)``.

    Usage errors raise SystemExit(2) from the parser.
    """
    report, code, _ = _execute(list(argv))
    return report, code


def _execute(argv: list[str]):
    args = build_parser().parse_args(argv)
    inputs = _Inputs()
    try:
        result, code = args.run(args, inputs)
    except it.BudgetExhausted as exc:
        result, code = {"budget_exhausted": True, "nodes": exc.nodes}, EXIT_BUDGET
    except (InputError, StructureError, AxiomError, th.SignatureError, th.StageError,
            wd.WorldError, geo.GeometryError, ValueError) as exc:
        result, code = {"error": str(exc)}, EXIT_USAGE
    report = {
        "command": argv,
        "inputs": dict(sorted(inputs.digests.items())),
        "result": result,
        "exit_code": code,
    }
    return report, code, args.format


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    start = time.perf_counter()
    try:
        report, code, fmt = _execute(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if code == EXIT_USAGE:
        print(f"theoria: error: {report['result']['error']}", file=sys.stderr)
    if fmt == "json":
        sys.stdout.write(json.dumps(report, indent=2, default=_json_default) + "\n")
    else:
        print(_text(report["command"][0], report["result"]))
    print(f"duration: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code
