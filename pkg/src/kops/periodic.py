"""The Hopf algebra of degree-zero operations on periodic p-local K-theory.

Basis Phi_n = Theta_n(Psi^q), where Theta_n has the interleaved roots
1, q, q^-1, q^2, q^-2, ...  The hat variant (nodes built from qhat) and KO
at p = 2 (q = 9) reuse every formula with the base swapped.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .connective import is_unit as connective_is_unit
from .errors import BasisMismatch, ContextMismatch, InsufficientPrecision, NotAUnit
from .exact_arith import Scalar, binom2, gp, is_local_unit, theta_geometric
from .series import PERIODIC, Series, TensorSeries, base_of
from .theta import interleaved, theta_eval

TO_CONNECTIVE = {"Phi": "phi", "PhiHat": "phiHat", "KO": "ko"}
TO_PERIODIC = {v: k for k, v in TO_CONNECTIVE.items()}


def _require_periodic(x: Series) -> None:
    if x.basis not in PERIODIC:
        raise BasisMismatch(f"expected a periodic basis, got {x.basis}")


def e_exponent(n: int, j: int) -> int:
    """Exponent of q on Psi^(q^j) in Phi_n (up to sign and Gaussian factor)."""
    if n % 2 == 0:
        return -((n - j) * (j - 1)) // 2
    return -((n - j) * j) // 2


def _qpow(q: int, e: int) -> Fraction:
    return Fraction(q) ** e


def Phi_to_adams(n: int, q: Scalar = 2) -> dict[int, Fraction]:
    """Phi_n = sum_j (-1)^(n-j) q^e(n,j) [n j]_q Psi^(q^j); keys are the j."""
    return {j: (-1) ** (n - j) * _qpow(q, e_exponent(n, j)) * gp(n, j, q) for j in range(n + 1)}


def _eigen_exponent(basis: str, p: int) -> int:
    if basis == "PhiHat":
        return p - 1
    if basis == "KO":
        return 2
    return 1


def periodic_adams_to_Phi(
    j: Scalar, prec: int, p: int = 3, q: int = 2, basis: str = "Phi"
) -> Series:
    """Psi^j with coefficients q^(n floor(n/2)) j^(-floor(n/2)) theta_n(j) / theta_n(q^n)."""
    if basis not in PERIODIC:
        raise BasisMismatch(f"expected a periodic basis, got {basis}")
    if basis == "KO":
        p, q = 2, 9
    j = Fraction(j)
    if not is_local_unit(j, p):
        raise NotAUnit(f"Psi^{j} needs a {p}-local unit")
    base = base_of(basis, p, q)
    lam = j ** _eigen_exponent(basis, p)
    coeffs = []
    for n in range(prec + 1):
        h = n // 2
        coeffs.append(
            _qpow(base, n * h) * lam ** (-h)
            * theta_geometric(n, base, lam) / theta_geometric(n, base, Fraction(base) ** n)
        )
    return Series.from_coeffs(basis, coeffs, p, q)


# -- product -----------------------------------------------------------------


@lru_cache(maxsize=None)
def periodic_product_coefficient(r: int, s: int, k: int, q: int) -> Fraction:
    """A^k_{r,s}: coefficient of Phi_k in Phi_r Phi_s (zero outside max(r,s) <= k <= r+s)."""
    if k < max(r, s) or k > r + s:
        return Fraction(0)
    hk = k // 2
    total = Fraction(0)
    for i in range(r + 1):
        gi = gp(r, i, q)
        for j in range(s + 1):
            g = gp(i + j, k, q)
            if not g:
                continue
            e = e_exponent(r, i) + e_exponent(s, j) + (k - i - j) * hk
            total += (-1) ** (r + s - i - j) * _qpow(q, e) * gi * gp(s, j, q) * g
    return total


def periodic_mul(x: Series, y: Series) -> Series:
    _require_periodic(x)
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
            for k in range(max(r, s), min(r + s, N) + 1):
                out[k] += ab * periodic_product_coefficient(r, s, k, q)
    return x.like(out)


# -- coproduct ---------------------------------------------------------------


def coproduct_coefficient(n: int, r: int, s: int, q: int) -> Fraction:
    """C_n^{r,s}, the coefficient of Phi_{n-r} (x) Phi_{n-s} in Delta Phi_n."""
    fr, fs = (n - r) // 2, (n - s) // 2
    total = Fraction(0)
    for k in range(min(r, s) + 1):
        e = e_exponent(n, n - k) + (k - r) * fr + (k - s) * fs
        total += (
            (-1) ** k * _qpow(q, e)
            * gp(n, k, q) * gp(n - k, n - r, q) * gp(n - k, n - s, q)
        )
    return total


@lru_cache(maxsize=None)
def periodic_coproduct_terms(n: int, q: int) -> tuple[tuple[int, int, Fraction], ...]:
    pairs = [(r, s) for r in range(n + 1) for s in range(n + 1 - r)]
    if n % 2:
        pairs += [(r, n + 1 - r) for r in range(2, n)]
    out = []
    for r, s in pairs:
        c = coproduct_coefficient(n, r, s, q)
        if c:
            out.append((n - r, n - s, c))
    return tuple(out)


def periodic_coproduct(x: Series) -> TensorSeries:
    """Delta x on Phi_a (x) Phi_b.

    An odd Phi_n also feeds total degree n - 1, so a series known to
    precision N (N even, N > 0) determines the entries of total degree at
    most N - 1.
    """
    _require_periodic(x)
    N = x.prec
    q = x.base
    out = [[Fraction(0)] * (N + 1) for _ in range(N + 1)]
    for n, an in enumerate(x.coeffs):
        if an:
            for a, b, c in periodic_coproduct_terms(n, q):
                out[a][b] += an * c
    exact = N if N % 2 or N == 0 else N - 1
    return TensorSeries.from_matrix(x, out, exact)


# -- antipode ----------------------------------------------------------------


def antipode_support_start(n: int) -> int:
    """First j with a possibly nonzero Phi_j coefficient in chi(Phi_n)."""
    return max(0, 2 * ((n - 1) // 2) + 1)


@lru_cache(maxsize=None)
def antipode_coefficient(n: int, j: int, q: int) -> Fraction:
    """Coefficient of Phi_j in chi(Phi_n), summed without using the support bound."""
    hj = j // 2
    total = Fraction(0)
    for i in range(n + 1):
        g = gp(-i, j, q)
        if not g:
            continue
        e = (i + j) * hj + e_exponent(n, i)
        total += (-1) ** (n - i) * _qpow(q, e) * gp(n, i, q) * g
    return total


def antipode(x: Series) -> Series:
    """chi(x), one step less precise than x.

    chi(Phi_n) only involves Phi_j with j >= 2 floor((n-1)/2) + 1 >= n - 1, so
    output coefficient j needs inputs up to n = j + 1.
    """
    _require_periodic(x)
    if x.prec < 1:
        raise InsufficientPrecision("the antipode needs prec >= 1")
    q = x.base
    N = x.prec - 1
    out = []
    for j in range(N + 1):
        acc = Fraction(0)
        for n in range(min(x.prec, j + 1) + 1):
            if x.coeffs[n] and antipode_support_start(n) <= j:
                acc += x.coeffs[n] * antipode_coefficient(n, j, q)
        out.append(acc)
    return x.like(out)


# -- coefficient action and idempotents ---------------------------------------


def periodic_act_on_coefficients(x: Series, i: int) -> Fraction:
    """Eigenvalue on pi_{2i} (i of either sign): sum_{n <= 2|i|} a_n Theta_n(q^i)."""
    _require_periodic(x)
    top = 2 * abs(i)
    if top > x.prec:
        raise InsufficientPrecision(f"action on degree {i} needs prec >= {top}, have {x.prec}")
    nodes = interleaved(x.base)
    v = Fraction(x.base) ** i
    return sum((x.coeffs[n] * theta_eval(n, nodes, v) for n in range(top + 1)), Fraction(0))


@lru_cache(maxsize=None)
def periodic_idempotent_coefficient(n: int, alpha: int, p: int, q: int) -> Fraction:
    h, c = n // 2, (n + 1) // 2
    total = Fraction(0)
    # i ranges over -n-1 < 2i <= n+1 with i = alpha mod p-1
    for i in range(-(n + 1) // 2 - 1, (n + 1) // 2 + 1):
        if not (-n - 1 < 2 * i <= n + 1) or (i - alpha) % (p - 1):
            continue
        total += (-1) ** (c - i) * _qpow(q, n * h + binom2(c - i)) * gp(n, h + i, q)
    return total / theta_geometric(n, q, Fraction(q) ** n)


def periodic_idempotent(alpha: int, prec: int, p: int = 3, q: int = 2) -> Series:
    """E_alpha, acting on pi_{2i} as 1 when i = alpha mod p-1 and as 0 otherwise."""
    if p == 2:
        raise ContextMismatch("Adams idempotents need an odd prime")
    if not 0 <= alpha <= p - 2:
        raise ValueError(f"alpha must lie in 0..{p - 2}")
    return Series.from_coeffs(
        "Phi", [periodic_idempotent_coefficient(n, alpha, p, q) for n in range(prec + 1)], p, q
    )


# -- the connective/periodic bridge -------------------------------------------


@lru_cache(maxsize=None)
def Phi_in_phi(n: int, q: int) -> tuple[tuple[int, Fraction], ...]:
    """Nonzero (i, c) with Phi_n = sum_i c phi_i; only floor(n/2) < i <= n occur."""
    if n == 0:
        return ((0, Fraction(1)),)
    out = []
    for i in range(n // 2 + 1, n + 1):
        c = sum(
            (
                (-1) ** (n - j) * _qpow(q, e_exponent(n, j)) * gp(n, j, q) * gp(j, i, q)
                for j in range(i, n + 1)
            ),
            Fraction(0),
        )
        if c:
            out.append((i, c))
    return tuple(out)


def periodic_to_connective(x: Series, finite: bool = False) -> Series:
    """Image of a periodic series under the inclusion into the connective algebra.

    Phi_n reaches phi_i only for floor(n/2) < i <= n, so phi_i with
    i <= floor((N+1)/2) is determined by the truncation; that is the output
    precision unless ``finite`` declares x to be exactly its stored sum.
    """
    _require_periodic(x)
    q = x.base
    N = x.prec
    M = N if finite else (N + 1) // 2
    out = [Fraction(0)] * (N + 1)
    for n, an in enumerate(x.coeffs):
        if an:
            for i, c in Phi_in_phi(n, q):
                out[i] += an * c
    return Series(TO_CONNECTIVE[x.basis], x.p, x.q, tuple(out[: M + 1]))


@lru_cache(maxsize=None)
def phi_in_Phi(n: int, q: int) -> tuple[Fraction, ...]:
    qf = Fraction(q)
    out = []
    for i in range(n + 1):
        c = (
            qf ** (((i + 3) // 2) * (n - i))
            * theta_geometric(n - i, q, qf ** (-i - 1))
            * gp(n - (i + 1) // 2 - 1, n - i, q)
        )
        out.append(c)
    return tuple(out)


def connective_phi_to_Phi(n: int, prec: int, p: int = 3, q: int = 2, basis: str = "Phi") -> Series:
    """phi_n written in the Phi basis (a finite sum over Phi_0..Phi_n)."""
    if basis not in PERIODIC:
        raise BasisMismatch(f"expected a periodic target basis, got {basis}")
    if basis == "KO":
        p, q = 2, 9
    coeffs = list(phi_in_Phi(n, base_of(basis, p, q)))[: prec + 1]
    coeffs += [Fraction(0)] * (prec + 1 - len(coeffs))
    return Series.from_coeffs(basis, coeffs, p, q)


def connective_to_periodic(x: Series) -> Series:
    """Phi-expansion of the finite sum sum_{n <= prec} a_n phi_n.

    The class of x modulo B_{prec+1} does not determine a periodic series, so
    this acts on the stored representative only.
    """
    if x.basis not in TO_PERIODIC:
        raise BasisMismatch(f"no periodic counterpart for basis {x.basis}")
    target = TO_PERIODIC[x.basis]
    out = Series.zero(target, x.prec, x.p, x.q)
    for n, an in enumerate(x.coeffs):
        if an:
            out = out + connective_phi_to_Phi(n, x.prec, x.p, x.q, target).scale(an)
    return out


def experimental_is_unit(x: Series) -> bool:
    """Unit test through the bridge; not a certified periodic criterion."""
    if x.basis != "Phi":
        raise BasisMismatch("the experimental unit test covers the Phi basis only")
    y = periodic_to_connective(x)
    return connective_is_unit(y)
