"""Command-line interface: ``toriccontract <subcommand> ...``.

Every subcommand prints deterministic JSON (sorted keys).  Exit status is 0
on success, 2 for usage or input errors, and 1 when the mathematics refuses
the input; the error name then appears on stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys

from .applications import (FiberProductInstance, FixtureError, NestedInstance, NoOrderFound,
                           fiber_product, flagship_example, nested_config)
from .contraction import (BoundTooSmall, ContractionProblem, HypothesesViolated, NotInSemigroup,
                          contract_initial, contraction_elimination)
from .groebner import Ideal, buchberger
from .ring import Ring, TermOrder
from .toric import EmptyFiber, MonomialMap, UnboundedFiber, UnsupportedSemigroup, fiber, toric_ideal

MATH_ERRORS = (HypothesesViolated, UnboundedFiber, UnsupportedSemigroup, EmptyFiber,
               NotInSemigroup, BoundTooSmall, NoOrderFound, FixtureError)


class UsageError(Exception):
    pass


def error_name(exc: BaseException) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", "_", type(exc).__name__).lower()


def _load_json(arg: str):
    """A JSON file path, or an inline JSON literal."""
    try:
        if os.path.exists(arg):
            with open(arg) as fh:
                return json.load(fh)
        return json.loads(arg)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {arg!r}: {exc}") from exc


def _read_lines(arg: str) -> list:
    try:
        with open(arg) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]


def _ring(names: str | None, n: int, prefix: str = "x") -> Ring:
    if names is None:
        return Ring.numbered(prefix, n)
    ring = Ring(tuple(v.strip() for v in names.split(",")))
    if ring.num_vars != n:
        raise ValueError(f"{ring.num_vars} variable names given, {n} needed")
    return ring


# ---------------------------------------------------------------------------
# subcommands parse their inputs, then return a thunk doing the computation


def cmd_toric(args):
    matrix = _load_json(args.matrix)
    amap = MonomialMap(matrix)
    amap = MonomialMap(amap.matrix, _ring(args.vars, amap.cols))
    order = TermOrder.parse(args.order, amap.source)
    return lambda: toric_ideal(amap, order, args.method).to_json()


def cmd_groebner(args):
    ring = Ring(tuple(v.strip() for v in args.ring.split(",")))
    ideal = Ideal.parse(ring, _read_lines(args.gens))
    order = TermOrder.parse(args.order, ring)
    return lambda: buchberger(ideal, order).to_json()


def cmd_contract(args):
    problem = ContractionProblem.from_json(_load_json(args.problem))

    def run():
        if not args.oracle:
            return contract_initial(problem).to_json()
        try:
            report = contract_initial(problem)
        except HypothesesViolated as exc:
            print(f"structured path refused: {error_name(exc)}: {exc}", file=sys.stderr)
            oracle = contraction_elimination(problem.amap, problem.ideal, problem.order)
            return {"route": "oracle", "refused": {"error": error_name(exc), "invariant": exc.invariant},
                    "oracle": oracle.to_json()}
        oracle = contraction_elimination(problem.amap, problem.ideal, report.groebner.order)
        if report.groebner.formatted() != oracle.formatted():
            raise AssertionError("structured and oracle contractions disagree")
        return {"route": "structured", "report": report.to_json(), "oracle": oracle.to_json(),
                "agree": True}

    return run


def cmd_fiber(args):
    V = _load_json(args.matrix)
    target = _load_json(args.target)
    if not isinstance(target, list):
        raise UsageError("target must be a JSON array")
    MonomialMap(V)
    return lambda: [list(a) for a in fiber(V, target)]


def cmd_nested(args):
    inst = NestedInstance.from_json(_load_json(args.instance))
    return lambda: nested_config(inst).to_json()


def cmd_fiberproduct(args):
    inst = FiberProductInstance.from_json(_load_json(args.instance))

    def run():
        res = fiber_product(inst)
        return {"order": res.order.spec_string(res.amap.source), "kernel": res.kernel.to_json(),
                "weight": list(res.problem.weight), "report": contract_initial(res.problem).to_json()}

    return run


def cmd_verify(args):
    def run():
        rep = flagship_example()
        if not args.json:
            print(rep.table(), file=sys.stderr)
        return rep.to_json()

    return run


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toriccontract", description=__doc__.splitlines()[0])
    p.add_argument("-o", "--output", help="write JSON here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("toric", help="reduced Groebner basis of the toric ideal P_A")
    s.add_argument("--matrix", required=True, help="JSON matrix (file or literal)")
    s.add_argument("--order", required=True, help="e.g. lex:x3,x2,x1 or degrevlex:x1,x2,x3@1,2,1")
    s.add_argument("--vars", help="comma-separated variable names (default x1..xn)")
    s.add_argument("--method", default="auto", choices=("auto", "saturation", "elimination"))
    s.set_defaults(func=cmd_toric)

    s = sub.add_parser("groebner", help="reduced Groebner basis of a polynomial ideal")
    s.add_argument("--ring", required=True, help="comma-separated variable names")
    s.add_argument("--gens", required=True, help="file with one polynomial per line")
    s.add_argument("--order", required=True)
    s.set_defaults(func=cmd_groebner)

    s = sub.add_parser("contract", help="Groebner basis of a contraction ideal")
    s.add_argument("--problem", required=True, help="JSON problem description")
    s.add_argument("--oracle", action="store_true", help="also run elimination; fall back to it on refusal")
    s.set_defaults(func=cmd_contract)

    s = sub.add_parser("fiber", help="all a >= 0 with V a = target")
    s.add_argument("--matrix", required=True)
    s.add_argument("--target", required=True)
    s.set_defaults(func=cmd_fiber)

    s = sub.add_parser("nested", help="nested configuration A~ and the product B . A~")
    s.add_argument("--instance", required=True)
    s.set_defaults(func=cmd_nested)

    s = sub.add_parser("fiberproduct", help="toric fiber product kernel and contraction report")
    s.add_argument("--instance", required=True)
    s.set_defaults(func=cmd_fiberproduct)

    s = sub.add_parser("verify-paper-example", help="recompute the worked flagship example")
    s.add_argument("--json", action="store_true", help="suppress the table on stderr")
    s.set_defaults(func=cmd_verify)
    return p


def _emit(obj, path: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        run = args.func(args)
    except (UsageError, ValueError, KeyError, TypeError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    try:
        result = run()
    except MATH_ERRORS as exc:
        print(f"{error_name(exc)}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    _emit(result, args.output)
    if args.command == "verify-paper-example" and not result["ok"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
