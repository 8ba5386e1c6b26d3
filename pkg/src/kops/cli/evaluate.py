"""Evaluate parsed expressions against the library."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .. import connective as C
from .. import periodic as P
from .. import two_local as Z
from ..errors import BasisMismatch, ContextMismatch, KOpsError
from ..exact_arith import LocalScalar, scalar_to_str
from ..series import CONNECTIVE, KO_Q, PERIODIC, TWO_LOCAL, Series, TensorSeries, check_context
from .expr import Atom, BinOp, Call, Expr, Name, Neg, Num, parse, to_text

Value = Union[Fraction, Series, TensorSeries, list]


@dataclass(frozen=True)
class Context:
    p: int = 3
    q: int = 2
    prec: int = 12
    basis: str = "phi"

    def validate(self) -> None:
        if self.prec < 0:
            raise ValueError("prec must be non-negative")
        if self.basis == "zeta" or self.basis in TWO_LOCAL:
            return
        check_context(self.basis, self.p, self.q)

    @property
    def scalar_prime(self) -> int:
        return 2 if self.basis in TWO_LOCAL or self.basis == "zeta" else self.p


def _atom(e: Atom, ctx: Context) -> Series:
    name, arg = e.name, e.arg
    if name == "psi":
        basis = ctx.basis
        if basis == "zeta":
            return Z.psi_to_zeta(arg, ctx.prec)
        if basis in PERIODIC:
            return P.periodic_adams_to_Phi(arg, ctx.prec, ctx.p, ctx.q, basis)
        return C.adams_to_phi(arg, ctx.prec, ctx.p, ctx.q, basis)
    if arg.denominator != 1 or arg < 0:
        raise ValueError(f"{name}() needs a non-negative integer, got {arg}")
    n = int(arg)
    if name == "e":
        return C.idempotent(n, ctx.prec, ctx.p, ctx.q)
    if name == "E":
        return P.periodic_idempotent(n, ctx.prec, ctx.p, ctx.q)
    if name in TWO_LOCAL or name == "zeta":
        return Series.element(name, n, ctx.prec, 2, KO_Q)
    return Series.element(name, n, ctx.prec, ctx.p, ctx.q)


def _combine(op: str, x: Value, y: Value) -> Value:
    if isinstance(x, list) or isinstance(y, list):
        raise TypeError("hopf() values cannot be combined")
    if isinstance(x, TensorSeries) and isinstance(y, TensorSeries):
        if op == "-":
            return x + _scale_tensor(y, Fraction(-1))
        return x + y if op == "+" else x * y
    if isinstance(x, TensorSeries) or isinstance(y, TensorSeries):
        t, s = (x, y) if isinstance(x, TensorSeries) else (y, x)
        if op == "*" and isinstance(s, Fraction):
            return _scale_tensor(t, s)
        raise ContextMismatch("tensors combine with tensors, or with scalars under *")
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return {"+": x + y, "-": x - y, "*": x * y}[op]
    if op == "+":
        return x + y
    if op == "-":
        return x - y
    return x * y


def _scale_tensor(t: TensorSeries, s: Fraction) -> TensorSeries:
    rows = [[v * s for v in row] for row in t.coeffs]
    return TensorSeries.from_matrix(t.context, rows, t.exact_degree)


def coprod_of(x: Series) -> TensorSeries:
    if x.basis in CONNECTIVE:
        return C.coproduct(x)
    if x.basis in PERIODIC:
        return P.periodic_coproduct(x)
    return Z.zeta_coproduct(x)


def act_of(x: Series, i: int) -> Fraction:
    if x.basis in CONNECTIVE:
        return C.act_on_coefficients(x, i)
    if x.basis in PERIODIC:
        return P.periodic_act_on_coefficients(x, i)
    return Z.zeta_act_on_coefficients(x, i)


def convert(x: Series, target: str) -> Series:
    if x.basis == target:
        return x
    if P.TO_CONNECTIVE.get(x.basis) == target:
        return P.periodic_to_connective(x)
    if P.TO_PERIODIC.get(x.basis) == target:
        return P.connective_to_periodic(x)
    if x.basis == "zeta" and target == "ko":
        return Z.quotient_to_ko(x)
    raise BasisMismatch(f"no conversion from {x.basis} to {target}")


def _series(v: Value, what: str) -> Series:
    if not isinstance(v, Series):
        raise TypeError(f"{what} needs a series argument")
    return v


def _call(e: Call, ctx: Context) -> Value:
    x = evaluate(e.args[0], ctx)
    f = e.func
    if f == "coprod":
        return coprod_of(_series(x, f))
    if f == "antipode":
        s = _series(x, f)
        if s.basis not in PERIODIC:
            raise BasisMismatch(f"the antipode needs a periodic basis, got {s.basis}")
        return P.antipode(s)
    if f == "invert":
        s = _series(x, f)
        if s.basis not in ("phi", "phiHat"):
            raise BasisMismatch(f"invert is available for phi and phiHat, got {s.basis}")
        return C.invert(s)
    if f == "convert":
        return convert(_series(x, f), e.args[1].name)
    n = int(e.args[1].value)
    if f == "act":
        return act_of(_series(x, f), n)
    if f == "hopf":
        return C.hopf_bundle_action(_series(x, f), n)
    raise ValueError(f"unknown function {f}")


def evaluate(e: Expr, ctx: Context) -> Value:
    """Value of ``e``; library errors carry the innermost failing subexpression."""
    try:
        if isinstance(e, Num):
            return Fraction(LocalScalar(e.value.numerator, e.value.denominator, ctx.scalar_prime))
        if isinstance(e, Atom):
            return _atom(e, ctx)
        if isinstance(e, Neg):
            v = evaluate(e.operand, ctx)
            return _combine("*", v, Fraction(-1)) if not isinstance(v, Fraction) else -v
        if isinstance(e, BinOp):
            return _combine(e.op, evaluate(e.left, ctx), evaluate(e.right, ctx))
        if isinstance(e, Call):
            return _call(e, ctx)
        if isinstance(e, Name):
            raise ValueError(f"bare basis name {e.name!r} outside convert()")
    except (KOpsError, ValueError, TypeError, ZeroDivisionError) as exc:
        if not hasattr(exc, "subexpression"):
            exc.subexpression = to_text(e)
        raise
    raise TypeError(f"not an expression node: {e!r}")


def evaluate_text(text: str, ctx: Context) -> Value:
    ctx.validate()
    return evaluate(parse(text), ctx)


def to_payload(v: Value, ctx: Context) -> dict:
    """JSON-ready form; all numbers are exact rational strings."""
    if isinstance(v, (Series, TensorSeries)):
        return v.to_dict()
    if isinstance(v, list):
        return {"p": ctx.p, "hopf": [scalar_to_str(c) for c in v]}
    return {"p": ctx.scalar_prime, "value": scalar_to_str(v)}


def to_pretty(v: Value) -> str:
    if isinstance(v, Series):
        return str(v)
    if isinstance(v, TensorSeries):
        terms = [f"{c}*{v.basis}{a}(x){v.basis}{b}" for (a, b), c in sorted(v.nonzero().items())]
        body = " + ".join(terms) if terms else "0"
        return f"{body} (exact for total degree <= {v.exact_degree})"
    if isinstance(v, list):
        return " + ".join(f"{c}*t^{i}" for i, c in enumerate(v) if c) or "0"
    return scalar_to_str(v)
