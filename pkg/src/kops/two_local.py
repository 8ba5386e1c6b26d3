"""2-local operations: the zeta basis of k^0(k)_(2) and the ko / KO bases.

With S = Psi^3 and T = Psi^-1 (so T^2 = 1) the basis is

    zeta_{2m+1} = (T - 1) thetabar_m(S)
    zeta_{2m}   = theta_m(S) + sum_{i=1}^{m} c_{m,i} zeta_{2m-2i+1}

where theta uses the roots 9^i and thetabar the roots 3^{2i+1}.  The ko and
KO bases are the odd-prime constructions run at q = 9 and live in
:mod:`kops.connective` / :mod:`kops.periodic`; this module adds the quotient
map from the zeta algebra onto ko.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .connective import coproduct as connective_coproduct
from .errors import (
    BasisMismatch,
    ContextMismatch,
    InsufficientPrecision,
    IntegralityViolation,
    NotAUnit,
)
from .exact_arith import Scalar, is_local_unit, is_p_local, theta_geometric
from .series import KO_Q, Series, TensorSeries
from .theta import geometric, odd_powers, theta_eval, theta_poly

GroupRing = dict  # {(k, t): coeff} for S^k T^t, t in {0, 1}

_THETA = geometric(KO_Q)
_THETABAR = odd_powers(3)
_ONE: GroupRing = {(0, 0): Fraction(1)}


def _theta9(n: int, x: Scalar) -> Fraction:
    return theta_geometric(n, KO_Q, x)


def thetabar(m: int, x: Scalar) -> Fraction:
    """(x - 3)(x - 27)...(x - 3^{2m-1})."""
    return theta_eval(m, _THETABAR, x)


# -- the group ring Z_(2)[S, T]/(T^2 - 1) ------------------------------------


def gr_add(a: GroupRing, b: GroupRing, scale: Scalar = 1) -> GroupRing:
    out = dict(a)
    for key, c in b.items():
        v = out.get(key, 0) + scale * c
        if v:
            out[key] = Fraction(v)
        else:
            out.pop(key, None)
    return out


def gr_mul(a: GroupRing, b: GroupRing) -> GroupRing:
    out: GroupRing = {}
    for (k1, t1), c1 in a.items():
        for (k2, t2), c2 in b.items():
            key = (k1 + k2, (t1 + t2) % 2)
            out[key] = out.get(key, 0) + c1 * c2
    return {k: Fraction(v) for k, v in out.items() if v}


def gr_from_S_poly(poly) -> GroupRing:
    return {(k, 0): Fraction(c) for k, c in enumerate(poly) if c}


def gr_action(g: GroupRing, i: int) -> Fraction:
    """Eigenvalue on pi_{2i}: S acts as 3^i and T as (-1)^i."""
    three = Fraction(3) ** i
    sign = -1 if i % 2 else 1
    return sum((c * three**k * (sign if t else 1) for (k, t), c in g.items()), Fraction(0))


def gr_coproduct_action(g: GroupRing, i: int, j: int) -> Fraction:
    """Action of Delta g on pi_{2i} (x) pi_{2j}; group-likes make this g on pi_{2(i+j)}."""
    return gr_action(g, i + j)


@lru_cache(maxsize=None)
def _zeta_gr(n: int) -> tuple:
    m = n // 2
    if n % 2:
        tm1 = {(0, 1): Fraction(1), (0, 0): Fraction(-1)}
        g = gr_mul(tm1, gr_from_S_poly(theta_poly(m, _THETABAR)))
    else:
        g = {(k, 0): Fraction(c) for k, c in enumerate(theta_poly(m, _THETA)) if c}
        for i in range(1, m + 1):
            c = zeta_even_correction(m, i)
            g = gr_add(g, dict(_zeta_gr(2 * m - 2 * i + 1)), c)
    for key, c in g.items():
        if not is_p_local(c, 2):
            raise IntegralityViolation(f"zeta_{n}: coefficient {c} of S^{key[0]}T^{key[1]} is not 2-local")
    return tuple(sorted(g.items()))


def zeta_even_correction(m: int, i: int) -> Fraction:
    """theta_i(3) theta_i(9^m) / (2 theta_i(9^i)), the weight of zeta_{2m-2i+1} in zeta_{2m}."""
    return _theta9(i, 3) * _theta9(i, Fraction(9) ** m) / (2 * _theta9(i, Fraction(9) ** i))


def zeta_to_group_ring(n: int) -> GroupRing:
    """zeta_n as a polynomial in S = Psi^3 and T = Psi^-1."""
    if n < 0:
        raise ValueError("zeta_n needs n >= 0")
    return dict(_zeta_gr(n))


# -- coefficient actions -----------------------------------------------------


@lru_cache(maxsize=None)
def zeta_action(n: int, i: int) -> Fraction:
    """Eigenvalue of zeta_n on pi_{2i}."""
    m = n // 2
    three = Fraction(3) ** i
    if n % 2 == 0:
        return _theta9(m, three) if i % 2 == 0 else thetabar(m, three)
    return Fraction(0) if i % 2 == 0 else -2 * thetabar(m, three)


def zeta_from_actions(values: list[Scalar]) -> Series:
    """The zeta series whose action on pi_{2i} is values[i], i = 0..len-1.

    zeta_n kills pi_{2i} for i < n, so the action matrix is triangular with
    nonzero diagonal and the coefficients follow by forward substitution.
    """
    N = len(values) - 1
    a: list[Fraction] = []
    for i in range(N + 1):
        rest = sum((a[n] * zeta_action(n, i) for n in range(i)), Fraction(0))
        a.append((Fraction(values[i]) - rest) / zeta_action(i, i))
    return Series.from_coeffs("zeta", a, 2, KO_Q)


def group_ring_to_zeta(g: GroupRing, prec: int) -> Series:
    return zeta_from_actions([gr_action(g, i) for i in range(prec + 1)])


def psi_to_zeta(j: Scalar, prec: int) -> Series:
    """Psi^j (j a 2-local unit) in the zeta basis: it acts on pi_{2i} by j^i."""
    j = Fraction(j)
    if not is_local_unit(j, 2):
        raise NotAUnit(f"Psi^{j} needs a 2-local unit")
    return zeta_from_actions([j**i for i in range(prec + 1)])


def zeta_act_on_coefficients(x: Series, i: int) -> Fraction:
    _require_zeta(x)
    if i > x.prec:
        raise InsufficientPrecision(f"action on degree {i} needs prec >= {i}, have {x.prec}")
    return sum((x.coeffs[n] * zeta_action(n, i) for n in range(i + 1)), Fraction(0))


# -- product -----------------------------------------------------------------


def _d(i: int, m: int, n: int) -> Fraction:
    nine = Fraction(KO_Q)
    return _theta9(i, nine**m) * _theta9(i, nine**n) / _theta9(i, nine**i)


@lru_cache(maxsize=None)
def zeta_product_terms(a: int, b: int) -> tuple[tuple[int, Fraction], ...]:
    """Nonzero (k, c) with zeta_a zeta_b = sum c zeta_k; every k >= max(a, b)."""
    if a % 2 and not b % 2:
        a, b = b, a
    m, n = a // 2, b // 2
    out: dict[int, Fraction] = {}

    def add(k: int, c: Fraction) -> None:
        out[k] = out.get(k, Fraction(0)) + c

    for i in range(min(m, n) + 1):
        d = _d(i, m, n)
        if not d:
            continue
        if a % 2 == 0 and b % 2 == 0:
            add(2 * m + 2 * n - 2 * i, d)
            add(2 * m + 2 * n + 1 - 2 * i, -d * (3**i - 1) / 2)
        elif a % 2 == 0:
            # even * odd, i.e. zeta_{2n+1} zeta_{2m}
            add(2 * m + 2 * n + 1 - 2 * i, 3**i * d)
        else:
            add(2 * m + 2 * n + 1 - 2 * i, -2 * 3**i * d)
    return tuple(sorted((k, c) for k, c in out.items() if c))


def _require_zeta(x: Series) -> None:
    if x.basis != "zeta":
        raise BasisMismatch(f"expected the zeta basis, got {x.basis}")


def zeta_mul(x: Series, y: Series) -> Series:
    _require_zeta(x)
    if x.context != y.context:
        raise ContextMismatch(f"{x.context} vs {y.context}")
    N = min(x.prec, y.prec)
    out = [Fraction(0)] * (N + 1)
    for a in range(N + 1):
        if not x.coeffs[a]:
            continue
        for b in range(N + 1):
            if not y.coeffs[b]:
                continue
            ab = x.coeffs[a] * y.coeffs[b]
            for k, c in zeta_product_terms(a, b):
                if k > N:
                    break
                out[k] += ab * c
    return x.like(out)


# -- coproduct ---------------------------------------------------------------


def _tensor_mul_terms(left, right) -> dict[tuple[int, int], Fraction]:
    out: dict[tuple[int, int], Fraction] = {}
    for (a1, b1), c1 in left.items():
        for (a2, b2), c2 in right.items():
            for ka, ca in zeta_product_terms(a1, a2):
                for kb, cb in zeta_product_terms(b1, b2):
                    key = (ka, kb)
                    out[key] = out.get(key, Fraction(0)) + c1 * c2 * ca * cb
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def monomial_in_zeta(k: int, t: int) -> tuple[Fraction, ...]:
    """S^k T^t in the zeta basis; it is a finite sum over zeta_0..zeta_{2k+1}."""
    return group_ring_to_zeta({(k, t): Fraction(1)}, 2 * k + 1).coeffs


@lru_cache(maxsize=None)
def zeta_coproduct_terms(n: int) -> tuple[tuple[int, int, Fraction], ...]:
    """Nonzero (a, b, c) with Delta zeta_n = sum c zeta_a (x) zeta_b.

    S and T are group-like, so Delta zeta_n = sum_g c_g g (x) g over the
    group-ring image; each monomial g is a finite zeta combination.  Every
    term has a + b >= n because Delta zeta_n kills pi_{2i} (x) pi_{2j} when
    i + j < n.
    """
    out: dict[tuple[int, int], Fraction] = {}
    for (k, t), c in zeta_to_group_ring(n).items():
        e = monomial_in_zeta(k, t)
        for a, ea in enumerate(e):
            if not ea:
                continue
            for b, eb in enumerate(e):
                if eb:
                    out[(a, b)] = out.get((a, b), Fraction(0)) + c * ea * eb
    return tuple(sorted((a, b, c) for (a, b), c in out.items() if c))


@lru_cache(maxsize=None)
def zeta_coproduct_stated_terms(n: int) -> tuple[tuple[int, int, Fraction], ...]:
    """The closed form Delta zeta_1 and Delta zeta_{2n}, with Delta zeta_{2n+1} = Delta zeta_1 Delta zeta_{2n}.

    For even index this sum has no odd tensor factors, so it agrees with
    :func:`zeta_coproduct_terms` only modulo I (x) A + A (x) I, I the ideal
    spanned by the odd zeta_n (the kernel of :func:`quotient_to_ko`).
    """
    if n == 1:
        return ((0, 1, Fraction(1)), (1, 0, Fraction(1)), (1, 1, Fraction(1)))
    k = n // 2
    nine = Fraction(KO_Q)
    even: dict[tuple[int, int], Fraction] = {}
    for r in range(k + 1):
        for s in range(k + 1 - r):
            c = _theta9(r + s, nine**k) / (_theta9(r, nine**r) * _theta9(s, nine**s))
            if c:
                even[(2 * k - 2 * r, 2 * k - 2 * s)] = c
    if n % 2 == 0:
        terms = even
    else:
        terms = _tensor_mul_terms({(a, b): c for a, b, c in zeta_coproduct_stated_terms(1)}, even)
    return tuple(sorted((a, b, c) for (a, b), c in terms.items()))


def zeta_coproduct(x: Series) -> TensorSeries:
    """Delta x on zeta_a (x) zeta_b; entries with a + b <= prec are exact."""
    _require_zeta(x)
    N = x.prec
    out = [[Fraction(0)] * (N + 1) for _ in range(N + 1)]
    for n, an in enumerate(x.coeffs):
        if an:
            for a, b, c in zeta_coproduct_terms(n):
                if a <= N and b <= N:
                    out[a][b] += an * c
    return TensorSeries.from_matrix(x, out, N)


# -- ko / KO -----------------------------------------------------------------


def ko_series_mul(x: Series, y: Series) -> Series:
    if x.basis != "ko" or y.basis != "ko":
        raise ContextMismatch(f"ko product needs two ko series, got {x.basis}, {y.basis}")
    return x * y


def KO_series_mul(x: Series, y: Series) -> Series:
    if x.basis != "KO" or y.basis != "KO":
        raise ContextMismatch(f"KO product needs two KO series, got {x.basis}, {y.basis}")
    return x * y


def quotient_to_ko(x: Series) -> Series:
    """Image in ko^0(ko)_(2): zeta_{2n} goes to theta_n(Psi^3), zeta_{2n+1} to 0.

    zeta_{2n} with 2n > prec is unknown, so the ko series has prec floor(N/2).
    """
    _require_zeta(x)
    return Series.from_coeffs("ko", list(x.coeffs[0::2]), 2, KO_Q)


def quotient_tensor_to_ko(t: TensorSeries) -> TensorSeries:
    """(quotient (x) quotient) applied to a zeta tensor series."""
    if t.basis != "zeta":
        raise BasisMismatch(f"expected a zeta tensor, got {t.basis}")
    rows = [list(row[0::2]) for row in t.coeffs[0::2]]
    return TensorSeries("ko", 2, KO_Q, tuple(tuple(r) for r in rows), t.exact_degree // 2)


def ko_coproduct(x: Series) -> TensorSeries:
    if x.basis != "ko":
        raise BasisMismatch(f"expected the ko basis, got {x.basis}")
    return connective_coproduct(x)
