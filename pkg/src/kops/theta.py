"""Polynomials theta_n(X; c) over arbitrary node sequences and their basis changes.

Given nodes c = (c_1, c_2, ...), ``theta_n(X; c) = (X - c_1)...(X - c_n)``.
Two node sequences give two bases of Q[X]; the coefficients converting one
into the other satisfy

    A_{n+1,r}(a, b) = (b_{r+1} - a_{n+1}) A_{n,r}(a, b) + A_{n,r-1}(a, b),

which is how :func:`basis_change` computes them.  The subset-sum formula in
:func:`basis_change_explicit` is kept only as an independent check.

Polynomials are dense tuples of fractions, lowest degree first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple, Sequence

from .errors import IntegralityViolation, PreconditionViolated, SizeLimit
from .exact_arith import Scalar, is_p_local, nu, residue

Poly = tuple  # tuple[Fraction, ...], coefficient of X^k at index k

EXPLICIT_LIMIT = 20


@dataclass(frozen=True)
class NodeSequence:
    """A sequence of interpolation nodes c_1, c_2, ... with structural identity.

    Build instances with the module-level constructors (:func:`geometric`,
    :func:`interleaved`, ...) rather than directly.
    """

    kind: str
    params: tuple

    def __call__(self, i: int) -> Fraction:
        return _node(self, i)

    def terms(self, n: int) -> list[Fraction]:
        return [self(i) for i in range(1, n + 1)]

    def shift(self, m: int) -> NodeSequence:
        return shifted(self, m)

    def __repr__(self) -> str:
        args = ", ".join(repr(p) if isinstance(p, NodeSequence) else str(p) for p in self.params)
        return f"{self.kind}({args})"


@lru_cache(maxsize=None)
def _node(seq: NodeSequence, i: int) -> Fraction:
    if i < 1:
        raise IndexError("node sequences are indexed from 1")
    kind, params = seq.kind, seq.params
    if kind == "geometric":
        return params[0] ** (i - 1)
    if kind == "interleaved":
        k = i // 2
        return params[0] ** (k if i % 2 == 0 else -k)
    if kind == "odd_powers":
        return params[0] ** (2 * i - 1)
    if kind == "constant":
        return params[0]
    if kind == "shifted":
        base, m = params
        return base(m + i)
    if kind == "explicit":
        values = params
        if i > len(values):
            raise IndexError(f"explicit sequence has only {len(values)} terms")
        return values[i - 1]
    raise ValueError(f"unknown node sequence kind {kind!r}")


def geometric(q: Scalar) -> NodeSequence:
    """Nodes 1, q, q^2, ...: the sequence behind theta_n(X) = prod (X - q^i)."""
    return NodeSequence("geometric", (Fraction(q),))


def interleaved(q: Scalar) -> NodeSequence:
    """Nodes 1, q, q^-1, q^2, q^-2, ...; c_i = q^((-1)^i floor(i/2))."""
    return NodeSequence("interleaved", (Fraction(q),))


def odd_powers(base: Scalar = 3) -> NodeSequence:
    """Nodes base, base^3, base^5, ..."""
    return NodeSequence("odd_powers", (Fraction(base),))


def constant(value: Scalar = 1) -> NodeSequence:
    return NodeSequence("constant", (Fraction(value),))


def shifted(seq: NodeSequence, m: int) -> NodeSequence:
    """The sequence c[m] = (c_{m+1}, c_{m+2}, ...)."""
    if m == 0:
        return seq
    if seq.kind == "shifted":
        base, k = seq.params
        return NodeSequence("shifted", (base, k + m))
    return NodeSequence("shifted", (seq, m))


def explicit(values: Sequence[Scalar]) -> NodeSequence:
    return NodeSequence("explicit", tuple(Fraction(v) for v in values))


# -- dense polynomial helpers ------------------------------------------------


def poly_trim(a: Sequence[Fraction]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return poly_trim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def poly_scale(a: Poly, s: Scalar) -> Poly:
    return poly_trim(Fraction(s) * x for x in a)


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_eval(a: Poly, x: Scalar) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_shift_arg(a: Poly, t: Scalar) -> Poly:
    """Coefficients of a(X + t)."""
    from .exact_arith import int_binomial

    out = [Fraction(0)] * len(a)
    for d, c in enumerate(a):
        if c:
            for k in range(d + 1):
                out[k] += c * int_binomial(d, k) * Fraction(t) ** (d - k)
    return poly_trim(out)


# -- theta polynomials -------------------------------------------------------


@lru_cache(maxsize=None)
def theta_poly(n: int, c: NodeSequence) -> Poly:
    """Monic polynomial of degree ``n`` with roots c_1, ..., c_n."""
    if n < 0:
        raise PreconditionViolated("theta_n needs n >= 0")
    if n == 0:
        return (Fraction(1),)
    prev = theta_poly(n - 1, c)
    return poly_mul(prev, (-c(n), Fraction(1)))


def theta_eval(n: int, c: NodeSequence, x: Scalar) -> Fraction:
    """prod_{i=1}^{n} (x - c_i)."""
    x = Fraction(x)
    out = Fraction(1)
    for i in range(1, n + 1):
        out *= x - c(i)
        if not out:
            break
    return out


def expand_in_theta_basis(poly: Poly, c: NodeSequence) -> list[Fraction]:
    """Coefficients a_j with ``poly = sum_j a_j theta_j(X; c)``.

    Newton-style synthetic division: evaluate at c_1, divide by (X - c_1),
    evaluate the quotient at c_2, and so on.
    """
    rest = list(poly_trim(poly))
    out: list[Fraction] = []
    k = 1
    while rest:
        node = c(k)
        # divide rest by (X - node): quotient and remainder via Horner
        quotient = [Fraction(0)] * (len(rest) - 1)
        acc = Fraction(0)
        for d in range(len(rest) - 1, -1, -1):
            acc = acc * node + rest[d]
            if d > 0:
                quotient[d - 1] = acc
        out.append(acc)
        rest = list(poly_trim(quotient))
        k += 1
    return out


# -- basis change ------------------------------------------------------------


@lru_cache(maxsize=None)
def _basis_change_row(n: int, a: NodeSequence, b: NodeSequence) -> tuple[Fraction, ...]:
    if n == 0:
        return (Fraction(1),)
    prev = _basis_change_row(n - 1, a, b)
    an = a(n)
    row = []
    for r in range(n + 1):
        val = Fraction(0)
        if r < n:
            val += (b(r + 1) - an) * prev[r]
        if r > 0:
            val += prev[r - 1]
        row.append(val)
    return tuple(row)


def basis_change(n: int, r: int, a: NodeSequence, b: NodeSequence) -> Fraction:
    """A_{n,r}(a, b): the coefficient of theta_r(X; b) in theta_n(X; a)."""
    if r < 0 or r > n:
        return Fraction(0)
    # build rows bottom-up so deep tables never hit the recursion limit
    for k in range(0, n, 64):
        _basis_change_row(k, a, b)
    return _basis_change_row(n, a, b)[r]


def basis_change_table(n: int, a: NodeSequence, b: NodeSequence) -> list[list[Fraction]]:
    """Rows 0..n of (A_{k,r}(a, b)), padded with zeros to a square matrix."""
    table = []
    for k in range(n + 1):
        row = list(_basis_change_row(k, a, b))
        table.append(row + [Fraction(0)] * (n - k))
    return table


def basis_change_explicit(n: int, r: int, a: NodeSequence, b: NodeSequence) -> Fraction:
    """A_{n,r}(a, b) as a sum over r-subsets J of {1..n}.

    Each subset contributes prod_{i not in J} (b_{sigma(i,J)} - a_i) where
    sigma(i, J) = 1 + #{j in J : j < i}.  Exponential in ``n``; test use only.
    """
    if n > EXPLICIT_LIMIT:
        raise SizeLimit(f"subset enumeration refused for n={n} > {EXPLICIT_LIMIT}")
    if r < 0 or r > n:
        return Fraction(0)
    av = a.terms(n)
    bv = b.terms(r + 1)
    total = Fraction(0)
    for J in combinations(range(1, n + 1), r):
        members = set(J)
        term = Fraction(1)
        below = 0
        for i in range(1, n + 1):
            if i in members:
                below += 1
                continue
            term *= bv[below] - av[i - 1]
            if not term:
                break
        total += term
    return total


def product_expansion(r: int, s: int, m: int, c: NodeSequence) -> list[tuple[int, Fraction]]:
    """Expansion theta_r theta_s = theta_m * sum_j A^{m,j}_{r,s} theta_j over nodes c.

    Returns ``(j, A^{m,j}_{r,s})`` for s <= j <= r + s - m, with
    A^{m,j}_{r,s} = A_{r-m, j-s}(c[m], c[s]).
    """
    if r < m:
        raise PreconditionViolated(f"product expansion needs r >= m (r={r}, m={m})")
    if s < 0 or m < 0:
        raise PreconditionViolated("indices must be non-negative")
    a, b = shifted(c, m), shifted(c, s)
    return [(j, basis_change(r - m, j - s, a, b)) for j in range(s, r + s - m + 1)]


# -- Stirling analogues ------------------------------------------------------


def stirling_s(n: int, i: int, qhat: Scalar) -> Fraction:
    """s(n, i) = A_{n,i}(qhat-powers, 1): theta_hat_n(X) in powers of (X - 1)."""
    return basis_change(n, i, geometric(qhat), constant(1))


def stirling_S(n: int, i: int, qhat: Scalar) -> Fraction:
    """S(n, i) = A_{n,i}(1, qhat-powers): (X - 1)^n in the theta_hat basis."""
    return basis_change(n, i, constant(1), geometric(qhat))


def stirling_table(kind: str, n: int, qhat: Scalar) -> list[list[Fraction]]:
    """Matrix (row k, column i) for 0 <= k, i <= n of s or S."""
    fn = {"s": stirling_s, "S": stirling_S}[kind]
    return [[fn(k, i, qhat) for i in range(n + 1)] for k in range(n + 1)]


def stirling_valuation_defect(n: int, i: int, qhat: Scalar, p: int) -> tuple[int | float, int | float]:
    """(nu_p s(n,i) - (n-i), nu_p S(n,i) - (n-i)); both are >= 0 in theory."""
    s = stirling_s(n, i, qhat)
    S = stirling_S(n, i, qhat)
    for v in (s, S):
        if not is_p_local(v, p):
            raise IntegralityViolation(f"Stirling analogue {v} at ({n},{i}) is not {p}-local")
    return nu(s, p) - (n - i), nu(S, p) - (n - i)


# -- finite-level power series quotient --------------------------------------


def reduce_mod_pY(coeffs: Sequence[Scalar], n: int, p: int) -> tuple[int, ...]:
    """Canonical form in Z_p[[Y]]/(p, Y)^n: coefficient of Y^k taken mod p^(n-k)."""
    out = []
    for k in range(n):
        c = coeffs[k] if k < len(coeffs) else 0
        out.append(residue(c, p ** (n - k)))
    return tuple(out)


def x_to_y(f: Sequence[Scalar], n: int, p: int) -> tuple[int, ...]:
    """Image of f(X) under X -> Y + 1 in Z_p[[Y]]/(p, Y)^n."""
    return reduce_mod_pY(poly_shift_arg(poly_trim(Fraction(v) for v in f), 1), n, p)


def y_to_x(c: Sequence[Scalar], n: int, qhat: Scalar) -> list[Fraction]:
    """Coefficients d_i of the class c_0 + sum_i (sum_j S(j,i) c_j) theta_hat_i.

    ``c`` is a finite representative; the output is in the theta_hat basis,
    indices 0..n-1.
    """
    c = [Fraction(v) for v in c]
    out = [c[0] if c else Fraction(0)]
    for i in range(1, n):
        out.append(sum((stirling_S(j, i, qhat) * c[j] for j in range(i, len(c))), Fraction(0)))
    return out


def theta_hat_combination(d: Sequence[Scalar], qhat: Scalar) -> Poly:
    """sum_i d_i theta_hat_i(X) as an X-polynomial."""
    nodes = geometric(qhat)
    acc: Poly = ()
    for i, di in enumerate(d):
        if di:
            acc = poly_add(acc, poly_scale(theta_poly(i, nodes), di))
    return acc


class QuotientRoundTrip(NamedTuple):
    y_image: tuple[int, ...]
    x_preimage: Poly
    y_again: tuple[int, ...]

    @property
    def is_identity(self) -> bool:
        return self.y_image == self.y_again


def quotient_ring_roundtrip(n: int, p: int, qhat: Scalar, f: Sequence[Scalar]) -> QuotientRoundTrip:
    """Send f (mod theta_hat_n) to Z_p[[Y]]/(p,Y)^n, back through the S(j,i) map, and forward again."""
    for v in f:
        if not is_p_local(v, p):
            raise IntegralityViolation(f"coefficient {v} is not {p}-local")
    g = x_to_y(f, n, p)
    back = theta_hat_combination(y_to_x(g, n, qhat), qhat)
    return QuotientRoundTrip(g, back, x_to_y(back, n, p))
