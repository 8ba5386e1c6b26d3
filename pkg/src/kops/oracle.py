"""Brute-force models used to certify the closed forms.

Nothing here calls the product, coproduct, antipode or idempotent formulas of
the other modules.  Operations are finite sums of Adams operations
(:class:`AdamsPoly`), cooperations are Laurent polynomials in w
(:class:`LaurentPoly`), and Psi^r acts on them by f(w) -> f(rw).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import NotInSpan, SizeLimit
from .exact_arith import Scalar, theta_geometric
from .theta import (
    NodeSequence,
    expand_in_theta_basis,
    geometric,
    interleaved,
    poly_mul,
    theta_eval,
    theta_poly,
)

ORACLE_LIMIT = 12


class LaurentPoly:
    """Finitely supported sum of c_k w^k with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def from_poly(cls, coeffs: Iterable[Scalar], shift: int = 0) -> LaurentPoly:
        return cls({k + shift: c for k, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> LaurentPoly:
        return cls({k: c})

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + other.scale(-1)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        out: dict[int, Fraction] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentPoly(out)

    def scale(self, s: Scalar) -> LaurentPoly:
        return LaurentPoly({k: v * s for k, v in self.terms.items()})

    def coeff(self, k: int) -> Fraction:
        return self.terms.get(k, Fraction(0))

    @property
    def degree(self) -> int | None:
        return max(self.terms) if self.terms else None

    @property
    def codegree(self) -> int | None:
        return min(self.terms) if self.terms else None

    def evaluate(self, w: Scalar) -> Fraction:
        w = Fraction(w)
        return sum((c * w**k for k, c in self.terms.items()), Fraction(0))

    def scale_arg(self, r: Scalar) -> LaurentPoly:
        """f(w) -> f(r w)."""
        r = Fraction(r)
        return LaurentPoly({k: c * r**k for k, c in self.terms.items()})

    def invert_arg(self) -> LaurentPoly:
        """f(w) -> f(w^-1)."""
        return LaurentPoly({-k: c for k, c in self.terms.items()})

    def __repr__(self) -> str:
        if not self.terms:
            return "LaurentPoly(0)"
        body = " + ".join(f"{c}*w^{k}" for k, c in sorted(self.terms.items()))
        return f"LaurentPoly({body})"


class AdamsPoly:
    """sum_j c_j Psi^(q^j), an element of the group ring on powers of q."""

    __slots__ = ("terms", "q")

    def __init__(self, terms: Mapping[int, Scalar], q: Scalar):
        self.terms = {j: Fraction(v) for j, v in terms.items() if v}
        self.q = Fraction(q)

    @classmethod
    def from_theta(cls, n: int, c: NodeSequence, q: Scalar) -> AdamsPoly:
        """theta_n(Psi^q; c), assuming the nodes of c are powers of q."""
        return cls(dict(enumerate(theta_poly(n, c))), q)

    def __eq__(self, other) -> bool:
        return isinstance(other, AdamsPoly) and (self.terms, self.q) == (other.terms, other.q)

    def __add__(self, other: AdamsPoly) -> AdamsPoly:
        out = dict(self.terms)
        for j, v in other.terms.items():
            out[j] = out.get(j, 0) + v
        return AdamsPoly(out, self.q)

    def __mul__(self, other: AdamsPoly) -> AdamsPoly:
        out: dict[int, Fraction] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return AdamsPoly(out, self.q)

    def scale(self, s: Scalar) -> AdamsPoly:
        return AdamsPoly({j: v * s for j, v in self.terms.items()}, self.q)

    def conjugate(self) -> AdamsPoly:
        """Psi^(q^j) -> Psi^(q^-j), the antipode on group-likes."""
        return AdamsPoly({-j: v for j, v in self.terms.items()}, self.q)

    def action_on(self, i: int) -> Fraction:
        """Eigenvalue on pi_{2i}: Psi^(q^j) acts as q^(ij)."""
        return sum((c * self.q ** (i * j) for j, c in self.terms.items()), Fraction(0))

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*Psi^(q^{j})" for j, c in sorted(self.terms.items()))
        return f"AdamsPoly({body or 0}; q={self.q})"


# -- dual bases --------------------------------------------------------------


def f_basis(n: int, q: Scalar = 2) -> LaurentPoly:
    """f_n(w) = theta_n(w) / theta_n(q^n)."""
    q = Fraction(q)
    den = theta_geometric(n, q, q**n)
    return LaurentPoly.from_poly(theta_poly(n, geometric(q))).scale(1 / den)


def F_basis(n: int, q: Scalar = 2) -> LaurentPoly:
    """F_n(w) = w^-floor(n/2) f_n(w)."""
    return f_basis(n, q) * LaurentPoly.monomial(-(n // 2))


def adams_act(op: AdamsPoly, f: LaurentPoly) -> LaurentPoly:
    """op . f: Psi^(q^j) scales the w^k coefficient by q^(jk)."""
    out = LaurentPoly()
    for j, c in op.terms.items():
        out = out + f.scale_arg(op.q**j).scale(c)
    return out


def pairing(op: AdamsPoly, f: LaurentPoly) -> Fraction:
    """<op, f>: act, then evaluate at w = 1."""
    return sum(
        (c * a * op.q ** (j * k) for j, c in op.terms.items() for k, a in f.terms.items()),
        Fraction(0),
    )


def phi_adams(n: int, q: Scalar = 2) -> AdamsPoly:
    return AdamsPoly.from_theta(n, geometric(q), q)


def Phi_adams(n: int, q: Scalar = 2) -> AdamsPoly:
    return AdamsPoly.from_theta(n, interleaved(q), q)


def series_to_adams(coeffs: Iterable[Scalar], q: Scalar, periodic: bool = False) -> AdamsPoly:
    """The finite sum sum_n a_n phi_n (or Phi_n) as an Adams polynomial."""
    make = Phi_adams if periodic else phi_adams
    out = AdamsPoly({}, q)
    for n, a in enumerate(coeffs):
        if a:
            out = out + make(n, q).scale(a)
    return out


def expand_in_f_basis(f: LaurentPoly, flavor: str = "f", q: Scalar = 2) -> list[Fraction]:
    """Coefficients of f on the f_n (flavor "f") or F_n (flavor "F").

    Triangular elimination: f_n is the only basis element reaching w^n, and
    F_n is the only one among F_0..F_n reaching w^-k (n = 2k) or w^(k+1)
    (n = 2k+1).
    """
    if not f:
        return []
    if flavor == "f":
        if f.codegree < 0:
            raise NotInSpan(f"negative powers of w are outside the span of the f_n: {f}")
        top = f.degree
        out = [Fraction(0)] * (top + 1)
        rest = f
        for n in range(top, -1, -1):
            basis = f_basis(n, q)
            c = rest.coeff(n) / basis.coeff(n)
            out[n] = c
            if c:
                rest = rest - basis.scale(c)
        return out
    if flavor != "F":
        raise ValueError(f"flavor must be 'f' or 'F', got {flavor!r}")
    hi, lo = max(f.degree, 0), max(-f.codegree, 0)
    top = max(2 * hi - 1, 2 * lo, 0)
    out = [Fraction(0)] * (top + 1)
    rest = f
    for n in range(top, -1, -1):
        basis = F_basis(n, q)
        k = -(n // 2) if n % 2 == 0 else (n + 1) // 2
        c = rest.coeff(k) / basis.coeff(k)
        out[n] = c
        if c:
            rest = rest - basis.scale(c)
    if rest:
        raise NotInSpan(f"residue {rest} after eliminating against F_0..F_{top}")
    return out


# -- product oracle ----------------------------------------------------------


def polynomial_product_oracle(r: int, s: int, c: NodeSequence) -> list[Fraction]:
    """theta_r theta_s re-expanded in the theta_k(X; c) basis by Newton division."""
    if r > ORACLE_LIMIT or s > ORACLE_LIMIT:
        raise SizeLimit(f"product oracle limited to r, s <= {ORACLE_LIMIT}")
    return expand_in_theta_basis(poly_mul(theta_poly(r, c), theta_poly(s, c)), c)


# -- structure-map oracles ---------------------------------------------------


def connective_coproduct_oracle(n: int, r: int, s: int, q: Scalar = 2) -> Fraction:
    """<phi_n, f_r f_s>, the phi_r (x) phi_s coefficient of Delta phi_n."""
    return pairing(phi_adams(n, q), f_basis(r, q) * f_basis(s, q))


def periodic_coproduct_oracle(n: int, r: int, s: int, q: Scalar = 2) -> Fraction:
    """<Phi_n, F_r F_s>."""
    return pairing(Phi_adams(n, q), F_basis(r, q) * F_basis(s, q))


def periodic_coefficient(op: AdamsPoly, j: int) -> Fraction:
    """Coefficient of Phi_j in op, read off against the dual elements F_j."""
    q = op.q
    return q ** (j * (j // 2)) * pairing(op, F_basis(j, q))


def antipode_oracle(n: int, j: int, q: Scalar = 2) -> Fraction:
    """Coefficient of Phi_j in chi(Phi_n) = Theta_n(Psi^(1/q))."""
    return periodic_coefficient(Phi_adams(n, q).conjugate(), j)


def periodic_action_remainder(n: int, j: int, q: Scalar = 2) -> LaurentPoly:
    """Remainder of Phi_n . F_j on division by f_{j-n} (as polynomials after clearing w)."""
    g = adams_act(Phi_adams(n, q), F_basis(j, q))
    if not g:
        return g
    shift = -g.codegree
    num = [g.coeff(k - shift) for k in range(g.degree + shift + 1)]
    den = list(theta_poly(j - n, geometric(q)))
    while len(num) >= len(den) and any(num):
        c = num[-1] / den[-1]
        off = len(num) - len(den)
        for i, d in enumerate(den):
            num[off + i] -= c * d
        num.pop()
    return LaurentPoly.from_poly(num, -shift)


def node_order(count: int) -> list[int]:
    """Exponents i of the nodes q^i of Theta, in order: 0, 1, -1, 2, -2, ..."""
    out = [0]
    k = 1
    while len(out) < count:
        out.append(k)
        if len(out) < count:
            out.append(-k)
        k += 1
    return out[:count]


def _interpolate(targets: list[Fraction], c: NodeSequence, points: list[Fraction]) -> list[Fraction]:
    # solve sum_{m <= n} a_m theta_m(points[n]; c) = targets[n]; theta_m vanishes on points[:m]
    a: list[Fraction] = []
    for n, x in enumerate(points):
        rest = sum((a[m] * theta_eval(m, c, x) for m in range(n)), Fraction(0))
        a.append((targets[n] - rest) / theta_eval(n, c, x))
    return a


def idempotent_oracle(alpha: int, prec: int, p: int, q: Scalar) -> list[Fraction]:
    """phi-coefficients of the operation acting as 1 on pi_{2i}, i = alpha mod p-1, else 0."""
    q = Fraction(q)
    idx = list(range(prec + 1))
    targets = [Fraction(int(i % (p - 1) == alpha)) for i in idx]
    return _interpolate(targets, geometric(q), [q**i for i in idx])


def periodic_idempotent_oracle(alpha: int, prec: int, p: int, q: Scalar) -> list[Fraction]:
    """Phi-coefficients of E_alpha by interpolation over the nodes 1, q, 1/q, q^2, ..."""
    q = Fraction(q)
    idx = node_order(prec + 1)
    targets = [Fraction(int(i % (p - 1) == alpha)) for i in idx]
    return _interpolate(targets, interleaved(q), [q**i for i in idx])
