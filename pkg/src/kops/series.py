"""Truncated operation series and their tensor squares.

A :class:`Series` with coefficients ``a_0..a_N`` in basis ``e`` stands for the
class of ``sum a_n e_n`` modulo the ideal spanned by ``e_n`` for ``n > N``.
Every basis of the package is triangular in this sense, so the truncation is
a ring quotient and all closed-form formulas act on it exactly.

Seven bases are known:

========  =====================  ================================
basis     family                 nodes of the defining polynomial
========  =====================  ================================
phi       connective             1, q, q^2, ...
phiHat    connective summand     same with qhat = q^(p-1)
Phi       periodic               1, q, q^-1, q^2, q^-2, ...
PhiHat    periodic summand       same with qhat
ko        connective, p = 2      powers of 9
KO        periodic, p = 2        interleaved powers of 9
zeta      2-local connective     mixed Psi^3 / Psi^-1 basis
========  =====================  ================================
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ContextMismatch, NotPLocal
from .exact_arith import Scalar, parse_scalar, scalar_to_str, validate_generator
from .theta import NodeSequence, geometric, interleaved

CONNECTIVE = frozenset({"phi", "phiHat", "ko"})
PERIODIC = frozenset({"Phi", "PhiHat", "KO"})
TWO_LOCAL = frozenset({"zeta", "ko", "KO"})
HAT = frozenset({"phiHat", "PhiHat"})
BASES = CONNECTIVE | PERIODIC | {"zeta"}

KO_Q = 9


@lru_cache(maxsize=None)
def check_context(basis: str, p: int, q: int) -> None:
    if basis not in BASES:
        raise ContextMismatch(f"unknown basis {basis!r}")
    if basis in TWO_LOCAL:
        if p != 2 or q != KO_Q:
            raise ContextMismatch(f"basis {basis} is fixed at p=2, q=9 (got p={p}, q={q})")
        return
    try:
        ok = validate_generator(q, p)
    except ValueError as exc:
        raise ContextMismatch(str(exc)) from None
    if not ok:
        raise ContextMismatch(f"q={q} is not primitive modulo {p}^2")


def base_of(basis: str, p: int, q: int) -> int:
    """The base of the node sequence: q, qhat = q^(p-1), or 9."""
    if basis in TWO_LOCAL:
        return KO_Q
    if basis in HAT:
        return q ** (p - 1)
    return q


def nodes_of(basis: str, p: int, q: int) -> NodeSequence | None:
    if basis == "zeta":
        return None
    base = base_of(basis, p, q)
    return interleaved(base) if basis in PERIODIC else geometric(base)


def _coerce(coeffs: Iterable[Scalar], p: int) -> tuple[Fraction, ...]:
    out = []
    for n, c in enumerate(coeffs):
        c = c if type(c) is Fraction else Fraction(c)
        if c.denominator % p == 0:
            raise NotPLocal(f"coefficient {n} = {c} is not {p}-local")
        out.append(c)
    return tuple(out)


@dataclass(frozen=True)
class Series:
    """``sum_{n <= prec} coeffs[n] * e_n`` in a fixed (basis, p, q) context."""

    basis: str
    p: int
    q: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        check_context(self.basis, self.p, self.q)
        if not self.coeffs:
            raise ValueError("a series needs at least one coefficient (prec >= 0)")
        object.__setattr__(self, "coeffs", _coerce(self.coeffs, self.p))

    # -- construction --------------------------------------------------------

    @classmethod
    def from_coeffs(cls, basis: str, coeffs: Sequence[Scalar], p: int = 3, q: int = 2) -> Series:
        if basis in TWO_LOCAL:
            p, q = 2, KO_Q
        return cls(basis, p, q, tuple(coeffs))

    @classmethod
    def zero(cls, basis: str, prec: int, p: int = 3, q: int = 2) -> Series:
        return cls.from_coeffs(basis, [0] * (prec + 1), p, q)

    @classmethod
    def one(cls, basis: str, prec: int, p: int = 3, q: int = 2) -> Series:
        return cls.from_coeffs(basis, [1] + [0] * prec, p, q)

    @classmethod
    def element(cls, basis: str, n: int, prec: int, p: int = 3, q: int = 2) -> Series:
        """The basis element e_n, truncated at ``prec`` (zero if n > prec)."""
        c = [0] * (prec + 1)
        if n <= prec:
            c[n] = 1
        return cls.from_coeffs(basis, c, p, q)

    def like(self, coeffs: Sequence[Scalar]) -> Series:
        return Series(self.basis, self.p, self.q, tuple(coeffs))

    # -- introspection -------------------------------------------------------

    @property
    def prec(self) -> int:
        return len(self.coeffs) - 1

    @property
    def base(self) -> int:
        return base_of(self.basis, self.p, self.q)

    @property
    def nodes(self) -> NodeSequence | None:
        return nodes_of(self.basis, self.p, self.q)

    @property
    def context(self) -> tuple[str, int, int]:
        return (self.basis, self.p, self.q)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, prec: int) -> Series:
        if prec > self.prec:
            raise ValueError(f"cannot raise precision from {self.prec} to {prec}")
        return self.like(self.coeffs[: prec + 1])

    def pad(self, prec: int) -> Series:
        """Extend with zeros; only meaningful when the element is a finite sum."""
        return self.like(self.coeffs + (Fraction(0),) * max(0, prec - self.prec))

    def augmentation(self) -> Fraction:
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def congruent(self, other: Series) -> bool:
        """Equality modulo the coarser of the two truncations."""
        self._check(other)
        n = min(self.prec, other.prec) + 1
        return self.coeffs[:n] == other.coeffs[:n]

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: Series) -> None:
        if not isinstance(other, Series):
            raise TypeError(f"expected Series, got {type(other).__name__}")
        if self.context != other.context:
            raise ContextMismatch(f"{self.context} vs {other.context}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + self.scalar(other)
        if not isinstance(other, Series):
            return NotImplemented
        self._check(other)
        n = min(self.prec, other.prec) + 1
        return self.like(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n]))

    __radd__ = __add__

    def __neg__(self):
        return self.like(-a for a in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if not isinstance(other, Series):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s: Scalar) -> Series:
        s = Fraction(s)
        return self.like(s * a for a in self.coeffs)

    def scalar(self, s: Scalar) -> Series:
        """The constant s * e_0 at this precision."""
        return self.like([Fraction(s)] + [Fraction(0)] * self.prec)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Series):
            return NotImplemented
        self._check(other)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> Series:
        if k < 0:
            raise ValueError("use invert() for negative powers")
        out = Series.one(self.basis, self.prec, self.p, self.q)
        for _ in range(k):
            out = out * self
        return out

    # -- serialisation -------------------------------------------------------

    def to_dict(self) -> dict:
        d: dict = {"p": self.p}
        if self.basis not in TWO_LOCAL:
            d["q"] = self.q
        d.update(basis=self.basis, prec=self.prec, coeffs=[scalar_to_str(c) for c in self.coeffs])
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> Series:
        coeffs = [parse_scalar(c) for c in d["coeffs"]]
        if "prec" in d and d["prec"] != len(coeffs) - 1:
            raise ValueError(f"prec {d['prec']} disagrees with {len(coeffs)} coefficients")
        return cls.from_coeffs(d["basis"], coeffs, d.get("p", 3), d.get("q", KO_Q))

    @classmethod
    def from_json(cls, text: str) -> Series:
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        terms = [f"{c}*{self.basis}{n}" for n, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return f"{body} (mod {self.basis}>{self.prec})"


def multiply(x: Series, y: Series) -> Series:
    """Product in whichever algebra the shared basis belongs to."""
    if x.basis in CONNECTIVE:
        from .connective import series_mul

        return series_mul(x, y)
    if x.basis in PERIODIC:
        from .periodic import periodic_mul

        return periodic_mul(x, y)
    from .two_local import zeta_mul

    return zeta_mul(x, y)


@dataclass(frozen=True)
class TensorSeries:
    """A truncated double series sum c[a][b] e_a (x) e_b.

    ``coeffs`` is a square matrix indexed 0..prec in both directions.  Only the
    entries with ``a + b <= exact_degree`` are determined by the truncated
    input; the rest are the coefficients of the finite representative that
    was fed in, which is exact when that input was itself a finite sum.
    """

    basis: str
    p: int
    q: int
    coeffs: tuple[tuple[Fraction, ...], ...]
    exact_degree: int

    @property
    def prec(self) -> int:
        return len(self.coeffs) - 1

    @property
    def context(self) -> tuple[str, int, int]:
        return (self.basis, self.p, self.q)

    @classmethod
    def from_matrix(cls, x: Series | tuple, matrix, exact_degree: int) -> TensorSeries:
        basis, p, q = x.context if isinstance(x, Series) else x
        rows = tuple(tuple(Fraction(v) for v in row) for row in matrix)
        return cls(basis, p, q, rows, exact_degree)

    def __getitem__(self, ab: tuple[int, int]) -> Fraction:
        a, b = ab
        return self.coeffs[a][b]

    def nonzero(self) -> dict[tuple[int, int], Fraction]:
        return {
            (a, b): v for a, row in enumerate(self.coeffs) for b, v in enumerate(row) if v
        }

    def congruent(self, other: TensorSeries) -> bool:
        if self.context != other.context:
            raise ContextMismatch(f"{self.context} vs {other.context}")
        d = min(self.exact_degree, other.exact_degree)
        n = min(self.prec, other.prec)
        return all(
            self.coeffs[a][b] == other.coeffs[a][b]
            for a in range(n + 1)
            for b in range(n + 1 - a)
            if a + b <= d
        )

    def __add__(self, other: TensorSeries) -> TensorSeries:
        if self.context != other.context:
            raise ContextMismatch(f"{self.context} vs {other.context}")
        n = min(self.prec, other.prec) + 1
        rows = [
            [self.coeffs[a][b] + other.coeffs[a][b] for b in range(n)] for a in range(n)
        ]
        return self.from_matrix(self.context, rows, min(self.exact_degree, other.exact_degree))

    def __mul__(self, other: TensorSeries) -> TensorSeries:
        if self.context != other.context:
            raise ContextMismatch(f"{self.context} vs {other.context}")
        return tensor_mul(self, other)

    def swap(self) -> TensorSeries:
        n = self.prec + 1
        rows = [[self.coeffs[b][a] for b in range(n)] for a in range(n)]
        return self.from_matrix(self.context, rows, self.exact_degree)

    def to_dict(self) -> dict:
        d: dict = {"p": self.p}
        if self.basis not in TWO_LOCAL:
            d["q"] = self.q
        d.update(
            basis=self.basis,
            prec=self.prec,
            exact_degree=self.exact_degree,
            tensor=[[scalar_to_str(v) for v in row] for row in self.coeffs],
        )
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> TensorSeries:
        p = d.get("p", 3)
        q = d.get("q", KO_Q)
        if d["basis"] in TWO_LOCAL:
            p, q = 2, KO_Q
        rows = [[parse_scalar(v) for v in row] for row in d["tensor"]]
        return cls.from_matrix((d["basis"], p, q), rows, d.get("exact_degree", len(rows) - 1))


def tensor_mul(x: TensorSeries, y: TensorSeries) -> TensorSeries:
    """(a (x) b)(c (x) d) = ac (x) bd, using the basis product of the context."""
    basis, p, q = x.context
    n = min(x.prec, y.prec)
    prods = _element_products(basis, p, q, n)
    out = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    xs = [(a, b, v) for (a, b), v in x.nonzero().items() if a <= n and b <= n]
    ys = [(a, b, v) for (a, b), v in y.nonzero().items() if a <= n and b <= n]
    for a, b, u in xs:
        for c, d, v in ys:
            left = prods[a][c]
            right = prods[b][d]
            uv = u * v
            for i, li in left:
                for j, rj in right:
                    out[i][j] += uv * li * rj
    return TensorSeries.from_matrix(x.context, out, min(x.exact_degree, y.exact_degree))


@lru_cache(maxsize=64)
def _element_products(basis: str, p: int, q: int, n: int):
    els = [Series.element(basis, k, n, p, q) for k in range(n + 1)]
    table = []
    for a in range(n + 1):
        row = []
        for c in range(n + 1):
            prod = els[a] * els[c]
            row.append([(i, v) for i, v in enumerate(prod.coeffs) if v])
        table.append(row)
    return table
