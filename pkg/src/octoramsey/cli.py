"""Command-line entry point.

Exit status: 0 when every check holds, 1 when a mathematical property was
falsified, 2 for bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from . import loops
from .errors import OctoRamseyError
from .naf import naf_decode, naf_encode, naf_from_text, naf_to_text
from .octonion import SignedUnit
from .signs import distinguish, lambda_sets
from .terms import Term, Unit, Var, eval_assigned, eval_units, leaves, parse, render, var_indices
from .witness import (
    DEFAULT_LEAF_CAP,
    Verdict,
    independent_sweep,
    symbolic_eval,
    theorem_sweep,
    x_witness,
)

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _emit(args: argparse.Namespace, text_lines: Sequence[str], payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, ensure_ascii=False))
    else:
        for line in text_lines:
            print(line)


def _is_ground(t: Term) -> bool:
    return all(isinstance(leaf, Unit) for leaf in leaves(t))


def cmd_eval(args: argparse.Namespace) -> int:
    t = parse(args.term)
    if _is_ground(t):
        value = str(eval_units(t))
        _emit(args, [value], {"term": render(t), "value": value})
        return EXIT_OK
    if not all(isinstance(leaf, Var) for leaf in leaves(t)):
        raise UsageError("terms mixing variables and units are not evaluated")
    v = symbolic_eval(t, args.leaf_cap)
    _emit(args, v.lines(), {"term": render(t), "coefficients": [str(c) for c in v.coeffs]})
    return EXIT_OK


def cmd_naf(args: argparse.Namespace) -> int:
    if args.decode:
        digits = naf_from_text(args.value)
        value = naf_decode(digits)
    else:
        try:
            value = int(args.value)
        except ValueError:
            raise UsageError(f"not an integer: {args.value!r}") from None
        digits = naf_encode(value)
    text = naf_to_text(digits)
    _emit(args, [f"{value} = {text}"], {"value": value, "naf": text})
    return EXIT_OK


def _mu_text(mu: dict[int, SignedUnit]) -> str:
    return " ".join(f"x{n}={mu[n]}" for n in sorted(mu))


def cmd_distinguish(args: argparse.Namespace) -> int:
    t, u = parse(args.t), parse(args.u)
    mu = distinguish(t, u)
    vt, vu = eval_assigned(t, mu), eval_assigned(u, mu)
    ok = vt == -vu and vt.index == 4
    _emit(
        args,
        [f"{_mu_text(mu)} / {vt} vs {vu}"],
        {"assignment": {f"x{n}": str(mu[n]) for n in sorted(mu)}, "t": str(vt), "u": str(vu), "separated": ok},
    )
    return EXIT_OK if ok else EXIT_FALSIFIED


def cmd_lambda(args: argparse.Namespace) -> int:
    t = parse(args.term)
    ls = lambda_sets(t)
    lines = ls.lines()
    _emit(args, lines, {"term": render(t), "entries": lines})
    return EXIT_OK


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {n}")
    return n


def cmd_theorem(args: argparse.Namespace) -> int:
    if args.independent:
        reports = independent_sweep(args.leaves, args.indices)
    else:
        reports = theorem_sweep(args.leaves, args.indices)
    bad = [r for r in reports if r.verdict is Verdict.EQUAL or r.slot != r.expected_slot]
    if args.json:
        for r in reports:
            print(json.dumps(r.as_dict()))
    else:
        for r in reports:
            print(r.line())
    print(f"# {len(reports)} checks, {len(bad)} failed", file=sys.stderr)
    return EXIT_FALSIFIED if bad else EXIT_OK


def cmd_inx(args: argparse.Namespace) -> int:
    t = parse(args.term)
    v = symbolic_eval(t, max(args.leaves, len(var_indices(t))))
    w = x_witness(v, args.indices, args.leaves)
    verdict = "in X" if w is not None else "not in X"
    caveat = f"bounded: index_bound={args.indices} leaf_cap={args.leaves}"
    lines = [f"{render(t)} {verdict}" + (f" via {render(w)}" if w is not None else ""), f"# {caveat}"]
    _emit(
        args,
        lines,
        {"term": render(t), "in_x": w is not None, "witness": render(w) if w is not None else None, "bounds": caveat},
    )
    return EXIT_OK


def _load_loop(args: argparse.Namespace) -> loops.LoopTable:
    if getattr(args, "group", None):
        try:
            return loops.builtin(args.group)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if getattr(args, "file", None):
        with open(args.file, encoding="utf-8") as fh:
            return loops.parse_table(fh.read())
    return loops.parse_table(sys.stdin.read())


def cmd_loop_check(args: argparse.Namespace) -> int:
    report = loops.validate_loop(_load_loop(args))
    _emit(
        args,
        [report.line()],
        {"valid": True, "moufang": report.moufang, "associative": report.associative, "order": report.order},
    )
    return EXIT_OK


def cmd_loop_mg2(args: argparse.Namespace) -> int:
    doubled = loops.m_g2(_load_loop(args))
    if args.json:
        print(json.dumps({"order": doubled.order, "identity": doubled.identity,
                          "table": doubled.table.tolist(), "names": list(doubled.names or ())}))
    else:
        sys.stdout.write(loops.format_table(doubled))
    return EXIT_OK


def cmd_loop_octo16(args: argparse.Namespace) -> int:
    loop = loops.octo16()
    if args.json:
        print(json.dumps({"order": loop.order, "identity": loop.identity,
                          "table": loop.table.tolist(), "names": list(loop.names or ())}))
    else:
        sys.stdout.write(loops.format_table(loop))
    return EXIT_OK


def _elements(loop: loops.LoopTable, text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(loop.index(tok) for tok in text.replace(",", " ").split())
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def cmd_loop_reduce(args: argparse.Namespace) -> int:
    loop = _load_loop(args)
    seq = loops.PeriodicSequence(_elements(loop, args.prefix), _elements(loop, args.cycle) or ())
    if args.to_group:
        red = loops.mg2_reduce_to_group(loop, seq, args.blocks)
        ok = all(p < loop.order // 2 for p in red.products)
        lines = [f"certificate={red.kind}"]
        lines += [
            f"block positions={','.join(map(str, b))} product={loop.name(p)}"
            for b, p in zip(red.blocks, red.products)
        ]
        payload = {"kind": red.kind, "blocks": [list(b) for b in red.blocks],
                   "products": [loop.name(p) for p in red.products]}
    else:
        wit = loops.ramsey_reduce(loop, seq, args.blocks)
        ok = all(p == loop.identity for p in wit.products)
        lines = [f"element={loop.name(wit.element)} order={wit.order}"]
        lines += [
            f"block positions={','.join(map(str, b))} product={loop.name(p)}"
            for b, p in zip(wit.blocks, wit.products)
        ]
        payload = {"element": loop.name(wit.element), "order": wit.order,
                   "blocks": [list(b) for b in wit.blocks], "products": [loop.name(p) for p in wit.products]}
    _emit(args, lines, payload)
    return EXIT_OK if ok else EXIT_FALSIFIED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="octoramsey", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="evaluate a ground or variable term")
    s.add_argument("term")
    s.add_argument("--leaf-cap", type=_positive, default=DEFAULT_LEAF_CAP)
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("naf", parents=[common], help="non-adjacent form of an integer")
    s.add_argument("value")
    s.add_argument("--decode", action="store_true", help="read VALUE as NAF text (1, 0, T)")
    s.set_defaults(func=cmd_naf)

    s = sub.add_parser("distinguish", parents=[common], help="assignment separating two bracketings")
    s.add_argument("t")
    s.add_argument("u")
    s.set_defaults(func=cmd_distinguish)

    s = sub.add_parser("lambda", parents=[common], help="unit assignments grouped by result")
    s.add_argument("term")
    s.set_defaults(func=cmd_lambda)

    s = sub.add_parser("theorem", parents=[common], help="sweep (t1(t2t3)) vs ((t1t2)t3)")
    s.add_argument("--leaves", type=_positive, required=True, help="total leaf cap")
    s.add_argument("--indices", type=_positive, required=True, help="variables x0 .. x<indices-1>")
    s.add_argument("--independent", action="store_true",
                   help="compare right-nested against left-nested terms from separate chains")
    s.set_defaults(func=cmd_theorem)

    s = sub.add_parser("inx", parents=[common], help="membership of a term's value in bounded X")
    s.add_argument("term")
    s.add_argument("--indices", type=_positive, default=7)
    s.add_argument("--leaves", type=_positive, default=5)
    s.set_defaults(func=cmd_inx)

    lp = sub.add_parser("loop", help="finite loop tools")
    lsub = lp.add_subparsers(dest="loop_command", required=True)
    for name, func, help_text in [
        ("check", cmd_loop_check, "validate a table and report Moufang/associativity"),
        ("mg2", cmd_loop_mg2, "emit the table of M(G, 2)"),
        ("reduce", cmd_loop_reduce, "reduction certificate for a periodic sequence"),
    ]:
        s = lsub.add_parser(name, parents=[common], help=help_text)
        src = s.add_mutually_exclusive_group()
        src.add_argument("--file", help="table file (default: stdin)")
        src.add_argument("--group", help="built-in: z<n>, s3, octo16, mg2:<name>")
        s.set_defaults(func=func)
        if name == "reduce":
            s.add_argument("--prefix", default="", help="elements before the cycle")
            s.add_argument("--cycle", required=True, help="repeating elements")
            s.add_argument("--blocks", type=_positive, default=3)
            s.add_argument("--to-group", action="store_true", help="reduce an M(G, 2) sequence into G")
    s = lsub.add_parser("octo16", parents=[common], help="emit the signed unit octonion loop")
    s.set_defaults(func=cmd_loop_octo16)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    handler: Callable[[argparse.Namespace], int] = args.func
    try:
        return handler(args)
    except (OctoRamseyError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
