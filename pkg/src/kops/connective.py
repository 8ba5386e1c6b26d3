"""Degree-zero operations on connective p-local K-theory in the phi_n basis.

phi_n = theta_n(Psi^q) with theta_n(X) = (X - 1)(X - q)...(X - q^{n-1}).
The same code serves the Adams summand (basis ``phiHat``, nodes powers of
qhat = q^(p-1)) and ko at p = 2 (basis ``ko``, nodes powers of 9): only the
base of the node sequence changes.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import (
    BasisMismatch,
    ContextMismatch,
    InsufficientPrecision,
    NotAUnit,
    NotDivisible,
    NotInIdeal,
)
from .exact_arith import (
    Scalar,
    binom2,
    gp,
    int_binomial,
    is_local_unit,
    is_p_local,
    nu,
    theta_geometric,
)
from .series import CONNECTIVE, HAT, Series, TensorSeries, base_of


def _require_connective(x: Series) -> None:
    if x.basis not in CONNECTIVE:
        raise BasisMismatch(f"expected a connective basis, got {x.basis}")


def series_add(x: Series, y: Series) -> Series:
    return x + y


def series_scale(x: Series, s: Scalar) -> Series:
    return x.scale(s)


# -- product -----------------------------------------------------------------


@lru_cache(maxsize=None)
def product_coefficient(r: int, s: int, j: int, q: int) -> Fraction:
    """Coefficient of phi_j in phi_r phi_s.

    theta_i(q^r) theta_i(q^s) / theta_i(q^i) with i = r + s - j, for
    max(r, s) <= j <= r + s; zero outside that band.
    """
    i = r + s - j
    if j < max(r, s) or i < 0:
        return Fraction(0)
    return (
        theta_geometric(i, q, Fraction(q) ** r)
        * theta_geometric(i, q, Fraction(q) ** s)
        / theta_geometric(i, q, Fraction(q) ** i)
    )


def series_mul(x: Series, y: Series) -> Series:
    """Product of two connective series; precision is the smaller of the two."""
    _require_connective(x)
    if x.context != y.context:
        raise ContextMismatch(f"{x.context} vs {y.context}")
    q = x.base
    N = min(x.prec, y.prec)
    a, b = x.coeffs, y.coeffs
    out = [Fraction(0)] * (N + 1)
    for r in range(N + 1):
        if not a[r]:
            continue
        for s in range(N + 1):
            if not b[s]:
                continue
            ab = a[r] * b[s]
            for j in range(max(r, s), min(r + s, N) + 1):
                out[j] += ab * product_coefficient(r, s, j, q)
    return x.like(out)


# -- Adams operations --------------------------------------------------------


def _eigen_exponent(basis: str, p: int) -> int:
    # Psi^j acts on the generating coefficient group by j^e
    if basis in HAT:
        return p - 1
    if basis == "ko":
        return 2
    return 1


def adams_to_phi(j: Scalar, prec: int, p: int = 3, q: int = 2, basis: str = "phi") -> Series:
    """Psi^j as a series: coefficient theta_n(j) / theta_n(q^n) on phi_n."""
    if basis not in CONNECTIVE:
        raise BasisMismatch(f"adams_to_phi needs a connective basis, got {basis}")
    if basis == "ko":
        p, q = 2, 9
    j = Fraction(j)
    if not is_local_unit(j, p):
        raise NotAUnit(f"Psi^{j} needs a {p}-local unit")
    base = base_of(basis, p, q)
    lam = j ** _eigen_exponent(basis, p)
    coeffs = [
        theta_geometric(n, base, lam) / theta_geometric(n, base, Fraction(base) ** n)
        for n in range(prec + 1)
    ]
    return Series.from_coeffs(basis, coeffs, p, q)


def phi_to_adams(n: int, q: Scalar = 2) -> dict[int, Fraction]:
    """phi_n = sum_j (-1)^(n-j) q^C(n-j,2) [n j]_q Psi^(q^j); keys are the exponents j."""
    q = Fraction(q)
    return {j: (-1) ** (n - j) * q ** binom2(n - j) * gp(n, j, q) for j in range(n + 1)}


# -- actions -----------------------------------------------------------------


def act_on_coefficients(x: Series, i: int) -> Fraction:
    """Eigenvalue of ``x`` on the coefficient group indexed by ``i`` (pi_{2i}).

    Equal to sum_{n <= i} a_n theta_n(q^i); needs ``i <= prec``.
    """
    _require_connective(x)
    if i < 0:
        raise ValueError("connective coefficient groups are indexed by i >= 0")
    if i > x.prec:
        raise InsufficientPrecision(f"action on degree {i} needs prec >= {i}, have {x.prec}")
    q = x.base
    qi = Fraction(q) ** i
    return sum((x.coeffs[n] * theta_geometric(n, q, qi) for n in range(i + 1)), Fraction(0))


def augmentation(x: Series) -> Fraction:
    return x.coeffs[0]


def act_on_hopf_bundle(n: int, max_deg: int, q: int = 2) -> list[Fraction]:
    """Coefficients of t^0..t^max_deg in phi_n(1 + t), with 1 + t the Hopf bundle."""
    expansion = phi_to_adams(n, q)
    out = []
    for i in range(max_deg + 1):
        out.append(
            sum((c * int_binomial(q**j, i) for j, c in expansion.items()), Fraction(0))
        )
    return out


def hopf_bundle_action(x: Series, max_deg: int) -> list[Fraction]:
    """Coefficients of t^i, i <= max_deg, in x(1 + t); exact for max_deg <= prec."""
    _require_connective(x)
    if x.basis != "phi":
        raise BasisMismatch("the Hopf bundle action is implemented for the phi basis only")
    if max_deg > x.prec:
        raise InsufficientPrecision(f"t^{max_deg} needs prec >= {max_deg}, have {x.prec}")
    out = [Fraction(0)] * (max_deg + 1)
    for n, a in enumerate(x.coeffs[: max_deg + 1]):
        if a:
            for i, v in enumerate(act_on_hopf_bundle(n, max_deg, x.q)):
                out[i] += a * v
    return out


# -- coproduct ---------------------------------------------------------------


@lru_cache(maxsize=None)
def coproduct_terms(n: int, q: int) -> tuple[tuple[int, int, Fraction], ...]:
    """Nonzero terms (a, b, c) of Delta phi_n = sum c phi_a (x) phi_b."""
    qn = Fraction(q) ** n
    out = []
    for r in range(n + 1):
        tr = theta_geometric(r, q, Fraction(q) ** r)
        for s in range(n + 1 - r):
            c = theta_geometric(r + s, q, qn) / (tr * theta_geometric(s, q, Fraction(q) ** s))
            if c:
                out.append((n - r, n - s, c))
    return tuple(out)


def coproduct(x: Series) -> TensorSeries:
    """Delta x as a matrix on phi_a (x) phi_b, a, b <= prec.

    Entries with a + b <= prec are determined by the class of x; the whole
    matrix is exact when x is the finite sum of its stored coefficients.
    """
    _require_connective(x)
    N = x.prec
    q = x.base
    out = [[Fraction(0)] * (N + 1) for _ in range(N + 1)]
    for n, an in enumerate(x.coeffs):
        if an:
            for a, b, c in coproduct_terms(n, q):
                out[a][b] += an * c
    return TensorSeries.from_matrix(x, out, N)


def counit_left(t: TensorSeries) -> Series:
    """(epsilon (x) id) applied to a tensor series: its row 0."""
    return Series(t.basis, t.p, t.q, t.coeffs[0])


# -- filtration and the phi_1 division ---------------------------------------


def filtration_level(x: Series) -> int:
    """Least m with a_m != 0, or prec + 1 when every stored coefficient vanishes."""
    for n, a in enumerate(x.coeffs):
        if a:
            return n
    return x.prec + 1


def pi_m(x: Series, m: int) -> Fraction:
    """sum_{n >= m} a_n (1 - q^m)(1 - q^{m+1})...(1 - q^{n-1}) over the stored terms."""
    _require_connective(x)
    if filtration_level(x) < m:
        raise NotInIdeal(f"series has filtration {filtration_level(x)} < {m}")
    q = Fraction(x.base)
    total = Fraction(0)
    weight = Fraction(1)
    for n in range(m, x.prec + 1):
        total += x.coeffs[n] * weight
        weight *= 1 - q**n
    return total


def divide_by_phi1(x: Series, m: int) -> Series:
    """beta in B_m with phi_1 beta = x, by forward substitution.

    Solves b_{n-1} + (q^n - 1) b_n = a_n for n >= m with b_n = 0 below m.  The
    coefficients of beta up to ``prec`` depend only on those of x, so the
    result keeps the input precision.
    """
    _require_connective(x)
    if filtration_level(x) < m:
        raise NotInIdeal(f"series has filtration {filtration_level(x)} < {m}")
    if m < 1:
        raise NotDivisible("phi_1 divides nothing outside the augmentation ideal")
    q = Fraction(x.base)
    b = [Fraction(0)] * (x.prec + 1)
    prev = Fraction(0)
    for n in range(m, x.prec + 1):
        bn = (x.coeffs[n] - prev) / (q**n - 1)
        if not is_p_local(bn, x.p):
            raise NotDivisible(
                f"b_{n} = {bn} is not {x.p}-local (pi_{m} = {pi_m(x, m)})"
            )
        b[n] = bn
        prev = bn
    return x.like(b)


# -- units -------------------------------------------------------------------


def is_unit(x: Series) -> bool:
    """Unit test: the action on degrees 0..p-2 must be by p-local units."""
    if x.basis == "phiHat":
        return unit_check_summand(x)
    if x.basis != "phi":
        raise BasisMismatch(f"no unit criterion for basis {x.basis}")
    if x.prec < x.p - 2:
        raise InsufficientPrecision(f"unit test needs prec >= {x.p - 2}")
    return all(is_local_unit(act_on_coefficients(x, i), x.p) for i in range(x.p - 1))


def unit_check_summand(x: Series) -> bool:
    if x.basis != "phiHat":
        raise BasisMismatch(f"summand unit test needs basis phiHat, got {x.basis}")
    return nu(x.coeffs[0], x.p) == 0


def invert(x: Series) -> Series:
    """Inverse modulo B_{prec+1}, solving for one coefficient at a time.

    The coefficient of phi_i in x * (b_0 + ... + b_i phi_i) is
    b_i * lambda_i(x) plus terms in b_0..b_{i-1}, where lambda_i is the
    action on degree i; the unit criterion makes every lambda_i invertible.
    """
    if not is_unit(x):
        raise NotAUnit("series fails the unit criterion")
    q = x.base
    N = x.prec
    a = x.coeffs
    b = [Fraction(0)] * (N + 1)
    for i in range(N + 1):
        lam = act_on_coefficients(x, i)
        rest = Fraction(0)
        for s in range(i):
            if not b[s]:
                continue
            for r in range(i - s, i + 1):
                if a[r]:
                    rest += a[r] * b[s] * product_coefficient(r, s, i, q)
        b[i] = ((1 if i == 0 else 0) - rest) / lam
    return x.like(b)


# -- Adams idempotents -------------------------------------------------------


@lru_cache(maxsize=None)
def idempotent_coefficient(n: int, alpha: int, p: int, q: int) -> Fraction:
    q = Fraction(q)
    total = sum(
        (
            (-1) ** (n - i) * q ** binom2(n - i) * gp(n, i, q)
            for i in range(n + 1)
            if i % (p - 1) == alpha
        ),
        Fraction(0),
    )
    return total / theta_geometric(n, q, q**n)


def idempotent(alpha: int, prec: int, p: int = 3, q: int = 2) -> Series:
    """The Adams idempotent e_alpha, acting as 1 on degrees i = alpha mod p-1, else 0."""
    if p == 2:
        raise ContextMismatch("Adams idempotents need an odd prime")
    if not 0 <= alpha <= p - 2:
        raise ValueError(f"alpha must lie in 0..{p - 2}")
    return Series.from_coeffs(
        "phi", [idempotent_coefficient(n, alpha, p, q) for n in range(prec + 1)], p, q
    )
