"""``kops`` command line entry point."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .. import acceptance
from .. import connective as C
from .. import two_local as Z
from ..errors import KOpsError
from ..exact_arith import scalar_to_str
from ..series import BASES
from ..theta import stirling_s, stirling_S
from .evaluate import Context, Value, act_of, coprod_of, evaluate, to_payload, to_pretty
from .expr import Atom, ParseError, parse

EXIT_OK, EXIT_EVAL, EXIT_PARSE, EXIT_SELFTEST = 0, 1, 2, 3

TABLES = ("product", "coproduct", "action", "stirling-s", "stirling-S", "hopf")


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=3, help="odd prime (default 3)")
    common.add_argument("--q", type=int, default=2, help="topological generator mod p^2 (default 2)")
    common.add_argument("--prec", type=int, default=12, help="truncation index N (default 12)")
    common.add_argument("--basis", default="phi", choices=sorted(BASES), help="basis family for psi() and tables")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", default=False, help="JSON output (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="human-readable output")
    common.add_argument("--out", help="write the result to this file instead of stdout")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="kops", description="Exact stable operations in p-local K-theory.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help)

    add("eval", "evaluate an expression").add_argument("expr")
    p = add("mul", "product of two expressions")
    p.add_argument("left")
    p.add_argument("right")
    add("coprod", "coproduct of an expression").add_argument("expr")
    add("antipode", "antipode of a periodic expression").add_argument("expr")
    add("invert", "inverse of a connective unit").add_argument("expr")
    p = add("act", "action on the coefficient group pi_2i")
    p.add_argument("expr")
    p.add_argument("i", type=int)
    p = add("convert", "change basis family")
    p.add_argument("expr")
    p.add_argument("target", choices=sorted(BASES))
    p = add("idempotent", "Adams idempotent e_alpha (or E_alpha with --basis Phi)")
    p.add_argument("alpha", type=int)
    p = add("table", "coefficient tables")
    p.add_argument("kind", choices=TABLES)
    p.add_argument("--size", type=int, default=6, help="largest index in the table (default 6)")
    p = add("selftest", "run the acceptance checks")
    p.add_argument("--depth", choices=("small", "full"), default="small")
    return parser


def _emit(payload: dict | str, args) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2 if args.pretty else None)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _render(value: Value, ctx: Context, args) -> None:
    _emit(to_pretty(value) if args.pretty else to_payload(value, ctx), args)


def _table(kind: str, size: int, ctx: Context) -> dict:
    if kind in ("stirling-s", "stirling-S"):
        qhat = ctx.q ** (ctx.p - 1)
        fn = stirling_s if kind == "stirling-s" else stirling_S
        rows = [[scalar_to_str(fn(n, i, qhat)) for i in range(size + 1)] for n in range(size + 1)]
        return {"table": kind, "p": ctx.p, "q": ctx.q, "rows": rows}
    if kind == "hopf":
        rows = [[scalar_to_str(v) for v in C.act_on_hopf_bundle(n, size, ctx.q)] for n in range(size + 1)]
        return {"table": kind, "p": ctx.p, "q": ctx.q, "rows": rows}
    if kind == "action":
        if ctx.basis == "zeta":
            act = Z.zeta_action
        else:
            els = [evaluate(Atom(ctx.basis, Fraction(n)), _with_prec(ctx, 2 * size)) for n in range(size + 1)]

            def act(n, i):
                return act_of(els[n], i)

        rows = [[scalar_to_str(act(n, i)) for i in range(size + 1)] for n in range(size + 1)]
        return {"table": kind, "basis": ctx.basis, "rows": rows}
    prec = 2 * size + 1
    c = _with_prec(ctx, prec)
    els = [evaluate(Atom(ctx.basis, Fraction(n)), c) for n in range(size + 1)]
    entries = []
    for r in range(size + 1):
        for s in range(size + 1):
            if kind == "product":
                v = els[r] * els[s]
                terms = {str(k): scalar_to_str(x) for k, x in enumerate(v.coeffs) if x}
                entries.append({"r": r, "s": s, "terms": terms})
        if kind == "coproduct":
            t = coprod_of(els[r])
            terms = {f"{a},{b}": scalar_to_str(x) for (a, b), x in sorted(t.nonzero().items())}
            entries.append({"n": r, "terms": terms})
    return {"table": kind, "basis": ctx.basis, "entries": entries}


def _with_prec(ctx: Context, prec: int) -> Context:
    return Context(ctx.p, ctx.q, prec, ctx.basis)


def _expression(args) -> str:
    cmd = args.command
    if cmd == "eval":
        return args.expr
    if cmd == "mul":
        return f"({args.left}) * ({args.right})"
    if cmd in ("coprod", "antipode", "invert"):
        return f"{cmd}({args.expr})"
    if cmd == "act":
        return f"act({args.expr}, {args.i})"
    if cmd == "convert":
        return f"convert({args.expr}, {args.target})"
    if cmd == "idempotent":
        name = "E" if args.basis in ("Phi", "PhiHat", "KO") else "e"
        return f"{name}({args.alpha})"
    raise ValueError(cmd)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    ctx = Context(args.p, args.q, args.prec, args.basis)

    if args.command == "selftest":
        results = acceptance.run_all(args.depth)
        ok = all(r.passed for r in results)
        report = {"depth": args.depth, "passed": ok, "checks": [r.to_dict() for r in results]}
        if args.pretty:
            lines = [f"{r.status.upper():4} {r.name} ({r.elapsed:.2f}s)" for r in results]
            _emit("\n".join(lines), args)
        else:
            _emit(report, args)
        return EXIT_OK if ok else EXIT_SELFTEST

    try:
        ctx.validate()
        if args.command == "table":
            _emit(_table(args.kind, args.size, ctx), args)
            return EXIT_OK
        text = _expression(args)
        tree = parse(text)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (KOpsError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_EVAL

    try:
        value = evaluate(tree, ctx)
    except (KOpsError, ValueError, TypeError, ZeroDivisionError) as exc:
        where = getattr(exc, "subexpression", None)
        suffix = f" [in {where}]" if where else ""
        print(f"error: {type(exc).__name__}: {exc}{suffix}", file=sys.stderr)
        return EXIT_EVAL
    _render(value, ctx, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
