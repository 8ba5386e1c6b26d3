"""Expression language for the command line.

Grammar (LL(1), ``*`` binds tighter than ``+`` and ``-``)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | atom
    atom   := number | name "(" args ")" | "(" expr ")"
    number := INT ("/" INT)?
    args   := arg ("," arg)*
    arg    := expr | basis-name

A ``-`` written directly against a number in operand position is part of the
literal, so ``-3`` is the number -3 while ``-(3)`` is a negation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..errors import KOpsError

ATOMS = ("phi", "Phi", "phiHat", "PhiHat", "ko", "KO", "zeta", "psi", "e", "E")
FUNCTIONS = {
    "coprod": 1,
    "antipode": 1,
    "invert": 1,
    "convert": 2,
    "act": 2,
    "hopf": 2,
}
TARGETS = ("phi", "Phi", "phiHat", "PhiHat", "ko", "KO", "zeta")


class ParseError(KOpsError, ValueError, SyntaxError):
    """Malformed expression; ``column`` is 1-based, ``expected`` a sorted tuple."""

    def __init__(self, message: str, column: int, expected: tuple[str, ...] = ()):
        self.column = column
        self.expected = tuple(sorted(expected))
        detail = f" (expected {', '.join(self.expected)})" if self.expected else ""
        text = f"column {column}: {message}{detail}"
        super().__init__(text)
        self.msg = text


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Atom:
    """A basis element or generator: phi(3), psi(1/2), e(0), ..."""

    name: str
    arg: Fraction


@dataclass(frozen=True)
class Name:
    """A bare basis name, only valid as the target of convert()."""

    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Neg:
    operand: Expr


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple


Expr = Union[Num, Atom, Name, BinOp, Neg, Call]


# -- tokens ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op" or "eof"
    text: str
    column: int
    spaced: bool  # whitespace precedes the token


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        spaced = start > pos
        if m.group(1):
            out.append(Token("int", m.group(1), start + 1, spaced))
        elif m.group(2):
            out.append(Token("name", m.group(2), start + 1, spaced))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/(),":
                raise ParseError(f"unexpected character {ch!r}", start + 1)
            out.append(Token("op", ch, start + 1, spaced))
        pos = m.end()
    out.append(Token("eof", "", len(text) + 1, False))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, expected) -> ParseError:
        t = self.tok
        what = "end of input" if t.kind == "eof" else repr(t.text)
        return ParseError(f"unexpected {what}", t.column, tuple(expected))

    def expect(self, text: str) -> Token:
        if self.tok.kind == "op" and self.tok.text == text:
            return self.advance()
        raise self.fail((repr(text),))

    def is_op(self, *texts: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in texts

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "eof":
            raise self.fail(("'+'", "'-'", "'*'", "end of input"))
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.is_op("+", "-"):
            op = self.advance().text
            e = BinOp(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.is_op("*"):
            self.advance()
            e = BinOp("*", e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.is_op("-"):
            nxt = self.toks[self.i + 1]
            if nxt.kind == "int" and not nxt.spaced:
                self.advance()
                return Num(-self.number())
            self.advance()
            return Neg(self.unary())
        return self.atom()

    def number(self) -> Fraction:
        t = self.tok
        if t.kind != "int":
            raise self.fail(("integer",))
        self.advance()
        value = Fraction(int(t.text))
        if self.is_op("/"):
            self.advance()
            d = self.tok
            if d.kind != "int":
                raise self.fail(("integer",))
            self.advance()
            if int(d.text) == 0:
                raise ParseError("zero denominator", d.column)
            value /= int(d.text)
        return value

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            return Num(self.number())
        if self.is_op("("):
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "name":
            if t.text in ATOMS:
                self.advance()
                self.expect("(")
                arg = self.signed_number()
                self.expect(")")
                return Atom(t.text, arg)
            if t.text in FUNCTIONS:
                return self.call()
            raise ParseError(f"unknown name {t.text!r}", t.column, ATOMS + tuple(FUNCTIONS))
        raise self.fail(("number", "'('", "'-'", "name"))

    def signed_number(self) -> Fraction:
        if self.is_op("-"):
            self.advance()
            return -self.number()
        return self.number()

    def call(self) -> Call:
        name = self.advance().text
        self.expect("(")
        args: list = [self.expr()]
        if name == "convert":
            self.expect(",")
            t = self.tok
            if t.kind != "name" or t.text not in TARGETS:
                raise self.fail(tuple(TARGETS))
            self.advance()
            args.append(Name(t.text))
        elif name in ("act", "hopf"):
            self.expect(",")
            n = self.signed_number()
            if n.denominator != 1:
                raise ParseError("integer argument required", self.toks[self.i - 1].column)
            args.append(Num(n))
        self.expect(")")
        return Call(name, tuple(args))


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# -- printing ----------------------------------------------------------------


def _num(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def to_text(e: Expr) -> str:
    """Canonical text; parse(to_text(e)) == e."""
    if isinstance(e, Num):
        return _num(e.value)
    if isinstance(e, Atom):
        return f"{e.name}({_num(e.arg)})"
    if isinstance(e, Name):
        return e.name
    if isinstance(e, BinOp):
        return f"({to_text(e.left)} {e.op} {to_text(e.right)})"
    if isinstance(e, Neg):
        return f"-({to_text(e.operand)})"
    if isinstance(e, Call):
        return f"{e.func}({', '.join(to_text(a) for a in e.args)})"
    raise TypeError(f"not an expression node: {e!r}")
