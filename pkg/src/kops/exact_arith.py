"""Exact p-local scalars, p-adic valuations and (Gaussian) binomial coefficients.

Scalars are ordinary :class:`fractions.Fraction` values throughout the
package.  :class:`LocalScalar` is the validated entry point: a ``Fraction``
that remembers its prime and refuses to exist unless its reduced denominator
is prime to ``p``.  Arithmetic on it returns plain fractions; the series types
re-check locality whenever they are built.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

from .errors import NotPLocal, ZeroDenominator

Scalar = Union[int, Fraction]

INF = math.inf


class LocalScalar(Fraction):
    """A reduced fraction lying in the local ring Z_(p)."""

    __slots__ = ("p",)

    def __new__(cls, numerator: Scalar = 0, denominator: Scalar = 1, p: int = 2):
        if denominator == 0:
            raise ZeroDenominator(f"{numerator}/0")
        self = super().__new__(cls, numerator, denominator)
        if self.denominator % p == 0:
            raise NotPLocal(f"{Fraction(self)} is not {p}-local")
        self.p = p
        return self

    def __repr__(self) -> str:
        return f"LocalScalar({self.numerator}, {self.denominator}, p={self.p})"

    def __reduce__(self):
        return (type(self), (self.numerator, self.denominator, self.p))

    @property
    def valuation(self) -> int | float:
        return nu(self, self.p)

    def is_unit(self) -> bool:
        return self != 0 and nu(self, self.p) == 0

    def to_json(self) -> str:
        return scalar_to_str(self)


def make_scalar(num: Scalar, den: Scalar, p: int) -> LocalScalar:
    """Build ``num/den`` in Z_(p), normalising sign and common factors.

    >>> make_scalar(-4, -6, 5)
    LocalScalar(2, 3, p=5)
    """
    return LocalScalar(num, den, p)


def is_p_local(x: Scalar, p: int) -> bool:
    return Fraction(x).denominator % p != 0


def require_p_local(x: Scalar, p: int, what: str = "value") -> Fraction:
    x = Fraction(x)
    if x.denominator % p:
        return x
    raise NotPLocal(f"{what} {x} is not {p}-local")


def _int_valuation(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def nu(x: Scalar, p: int) -> int | float:
    """p-adic valuation of a rational; ``math.inf`` for zero.

    Negative for rationals outside Z_(p).
    """
    x = Fraction(x)
    if x == 0:
        return INF
    return _int_valuation(abs(x.numerator), p) - _int_valuation(x.denominator, p)


def is_local_unit(x: Scalar, p: int) -> bool:
    return x != 0 and nu(x, p) == 0


def int_binomial(m: int, i: int) -> int:
    """Binomial coefficient m(m-1)...(m-i+1)/i! for any integer ``m``."""
    if i < 0:
        return 0
    if m >= 0:
        return math.comb(m, i)
    # C(m, i) = (-1)^i C(i - m - 1, i)
    return (-1) ** i * math.comb(i - m - 1, i)


def binom2(m: int) -> int:
    """m(m-1)/2, valid for negative m as well."""
    return m * (m - 1) // 2


def theta_geometric(n: int, q: Scalar, x: Scalar) -> Fraction:
    """theta_n(x) = (x - 1)(x - q)...(x - q^{n-1})."""
    x = Fraction(x)
    out = Fraction(1)
    qi = Fraction(1)
    for _ in range(n):
        out *= x - qi
        if not out:
            return out
        qi *= q
    return out


@lru_cache(maxsize=None)
def gaussian_binomial(n: int, j: int, q: Scalar) -> Fraction:
    """The q-binomial coefficient theta_j(q^n) / theta_j(q^j).

    ``n`` may be negative; the ratio formula is used verbatim.
    """
    if j < 0:
        return Fraction(0)
    q = Fraction(q)
    return theta_geometric(j, q, q**n) / theta_geometric(j, q, q**j)


gp = gaussian_binomial


@lru_cache(maxsize=None)
def validate_generator(q: int, p: int) -> bool:
    """True when ``q`` has multiplicative order p(p-1) modulo p^2."""
    from sympy import isprime
    from sympy.ntheory import n_order

    if p == 2 or not isprime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if q % p == 0:
        return False
    return n_order(q % (p * p), p * p) == p * (p - 1)


def residue(x: Scalar, modulus: int) -> int:
    """Image of a rational with denominator prime to ``modulus`` in Z/modulus."""
    x = Fraction(x)
    if modulus == 1:
        return 0
    return x.numerator * pow(x.denominator, -1, modulus) % modulus


def scalar_to_str(x: Scalar) -> str:
    x = Fraction(x)
    return str(x)


def parse_scalar(text: str | int | Rational) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except ZeroDivisionError as exc:
        raise ZeroDenominator(str(text)) from exc
