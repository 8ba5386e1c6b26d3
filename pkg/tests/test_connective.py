import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kops import connective as C
from kops.errors import BasisMismatch, InsufficientPrecision, NotAUnit, NotDivisible, NotInIdeal
from kops.exact_arith import is_p_local, theta_geometric
from kops.oracle import polynomial_product_oracle
from kops.series import Series, TensorSeries
from kops.theta import geometric, interleaved

from .conftest import local_fractions

F = Fraction


def el(n, prec=8, p=3, q=2, basis="phi"):
    return Series.element(basis, n, prec, p, q)


def series_strategy(p=3, q=2, prec=6, basis="phi"):
    return st.lists(local_fractions(p, 8, 4), min_size=prec + 1, max_size=prec + 1).map(
        lambda cs: Series.from_coeffs(basis, cs, p, q)
    )


# -- product ------------------------------------------------------------------


def test_phi1_times_phin():
    for q in (2, 3):
        for n in range(8):
            got = el(1, 9, q=q if q == 2 else 3, p=3 if q == 2 else 5) * el(n, 9, q=q if q == 2 else 3, p=3 if q == 2 else 5)
            want = [0] * 10
            want[n] += q**n - 1
            want[n + 1] += 1
            assert list(got.coeffs) == want


def test_product_small_examples():
    phi1 = el(1, 3)
    assert list((phi1 * phi1).coeffs) == [0, 1, 1, 0]
    x = Series.from_coeffs("phi", [2, -1, F(1, 2), 5])
    assert Series.one("phi", 3) * x == x


@pytest.mark.parametrize("q", [2, 3])
def test_product_matches_polynomial_oracle(q):
    p = 3 if q == 2 else 5
    for r in range(9):
        for s in range(9):
            got = (el(r, r + s, p, q) * el(s, r + s, p, q)).coeffs
            assert list(got) == polynomial_product_oracle(r, s, geometric(q))


@given(series_strategy(), series_strategy(), series_strategy())
def test_ring_axioms(x, y, z):
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


def test_product_precision_is_min():
    assert (el(1, 3) * el(1, 6)).prec == 3


# -- Adams operations ---------------------------------------------------------


def test_adams_to_phi_examples():
    q = 2
    assert list(C.adams_to_phi(q, 5).coeffs) == [1, 1, 0, 0, 0, 0]
    assert list(C.adams_to_phi(q * q, 5).coeffs) == [1, q + 1, 1, 0, 0, 0]
    assert list(C.adams_to_phi(1, 5).coeffs) == [1, 0, 0, 0, 0, 0]
    with pytest.raises(NotAUnit):
        C.adams_to_phi(3, 5)


def test_phi_to_adams_examples():
    assert C.phi_to_adams(1, 2) == {0: -1, 1: 1}
    assert C.phi_to_adams(0, 2) == {0: 1}
    assert C.phi_to_adams(2, 2) == {0: 2, 1: -3, 2: 1}


@pytest.mark.parametrize("p,q", [(3, 2), (5, 2)])
def test_adams_homomorphism(p, q):
    js = [F(1), F(2), F(-1), F(1, 2), F(4, 7), F(-8, 11)]
    for j in js:
        for k in js:
            lhs = C.adams_to_phi(j, 9, p, q) * C.adams_to_phi(k, 9, p, q)
            assert lhs == C.adams_to_phi(j * k, 9, p, q)


def test_adams_eigenvalues():
    for j in (F(2), F(-5, 7), F(4)):
        x = C.adams_to_phi(j, 8)
        for i in range(9):
            assert C.act_on_coefficients(x, i) == j**i
        assert C.augmentation(x) == 1


# -- actions ----------------------------------------------------------------


def test_action_of_basis_elements():
    for n in range(7):
        for i in range(7):
            assert C.act_on_coefficients(el(n, 8), i) == theta_geometric(n, 2, F(2) ** i)
    x = Series.from_coeffs("phi", [F(5, 2), 3, 4])
    assert C.act_on_coefficients(x, 0) == F(5, 2)
    with pytest.raises(InsufficientPrecision):
        C.act_on_coefficients(x, 3)


@given(series_strategy(prec=7), series_strategy(prec=7))
def test_action_is_ring_map(x, y):
    for i in range(8):
        assert C.act_on_coefficients(x * y, i) == C.act_on_coefficients(x, i) * C.act_on_coefficients(y, i)
        assert C.act_on_coefficients(x + y, i) == C.act_on_coefficients(x, i) + C.act_on_coefficients(y, i)


def test_hopf_bundle_examples():
    assert C.act_on_hopf_bundle(1, 2, 2) == [0, 1, 1]
    # the identity operation fixes the Hopf bundle 1 + t
    assert C.act_on_hopf_bundle(0, 3, 2) == [1, 1, 0, 0]
    assert C.act_on_hopf_bundle(2, 7, 2) == [0, 0, 3, 4, 1, 0, 0, 0]
    assert C.act_on_hopf_bundle(3, 7, 2) == [0, 0, 0, 28, 63, 56, 28, 8]
    for n in range(8):
        v = C.act_on_hopf_bundle(n, 10, 2)
        assert all(c == 0 for c in v[:n])
        assert all(c.denominator == 1 for c in v)


def test_hopf_bundle_of_series():
    x = el(2, 4) + el(3, 4).scale(2)
    want = [a + 2 * b for a, b in zip(C.act_on_hopf_bundle(2, 4), C.act_on_hopf_bundle(3, 4))]
    assert C.hopf_bundle_action(x, 4) == want
    with pytest.raises(InsufficientPrecision):
        C.hopf_bundle_action(x, 5)
    with pytest.raises(BasisMismatch):
        C.hopf_bundle_action(el(1, 4, basis="phiHat"), 2)


# -- coproduct --------------------------------------------------------------


def test_coproduct_examples():
    assert C.coproduct(el(0, 3)).nonzero() == {(0, 0): 1}
    assert C.coproduct(el(1, 3)).nonzero() == {(1, 1): 1, (1, 0): 1, (0, 1): 1}
    assert C.coproduct(el(3, 3)).nonzero() == {
        (0, 3): 1, (1, 2): 28, (1, 3): 7, (2, 1): 28, (2, 2): 42,
        (2, 3): 7, (3, 0): 1, (3, 1): 7, (3, 2): 7, (3, 3): 1,
    }


def _delta_left(t: TensorSeries, prec: int):
    # (Delta (x) id) as a dict on triples
    out = {}
    for (a, b), c in t.nonzero().items():
        for (x, y), d in C.coproduct(el(a, prec)).nonzero().items():
            out[(x, y, b)] = out.get((x, y, b), 0) + c * d
    return {k: v for k, v in out.items() if v}


def _delta_right(t: TensorSeries, prec: int):
    out = {}
    for (a, b), c in t.nonzero().items():
        for (x, y), d in C.coproduct(el(b, prec)).nonzero().items():
            out[(a, x, y)] = out.get((a, x, y), 0) + c * d
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("n", range(9))
def test_coassociative_and_counital(n):
    t = C.coproduct(el(n, n))
    assert _delta_left(t, n) == _delta_right(t, n)
    assert C.counit_left(t) == el(n, n)
    assert C.counit_left(t.swap()) == el(n, n)


def test_coproduct_is_algebra_map():
    for r in range(5):
        for s in range(5):
            N = 8
            lhs = C.coproduct(el(r, N) * el(s, N))
            rhs = C.coproduct(el(r, N)) * C.coproduct(el(s, N))
            assert lhs.congruent(rhs)


def test_coproduct_on_group_likes():
    x = C.adams_to_phi(F(2, 5), 7)
    t = C.coproduct(x)
    for a in range(8):
        for b in range(8 - a):
            assert t[a, b] == x.coeffs[a] * x.coeffs[b]


# -- filtration, pi_m, phi_1 division ----------------------------------------


def test_filtration_examples():
    assert C.filtration_level(el(3, 5)) == 3
    assert C.filtration_level(Series.one("phi", 5) + el(2, 5)) == 0
    assert C.filtration_level(Series.zero("phi", 5)) == 6


def test_pi_m_examples():
    for m in range(1, 6):
        assert C.pi_m(el(m, 10), m) == 1
    assert C.pi_m(el(2, 5), 1) == -1
    with pytest.raises(NotInIdeal):
        C.pi_m(el(1, 5), 2)


@given(series_strategy(prec=8), st.integers(1, 4))
def test_pi_m_kills_phi1_multiples(y, m):
    # leave headroom so the truncated product is the full finite product
    y = y.like([0] * m + list(y.coeffs[m:]) + [0])
    assert C.pi_m(el(1, 9) * y, m) == 0


def test_divide_by_phi1_examples():
    phi1 = el(1, 6)
    assert C.divide_by_phi1(phi1 * phi1, 1) == phi1
    with pytest.raises(NotDivisible):
        C.divide_by_phi1(el(2, 6), 1)
    assert C.divide_by_phi1(Series.zero("phi", 6), 1).is_zero()


@given(series_strategy(prec=8), st.integers(1, 4))
def test_divide_by_phi1_inverts_multiplication(y, m):
    y = y.like([0] * m + list(y.coeffs[m:]))
    x = el(1, 8) * y
    assert C.divide_by_phi1(x, m).congruent(y.truncate(7))
    assert C.filtration_level(x) >= m


@given(series_strategy(prec=7), series_strategy(prec=7), st.integers(0, 4), st.integers(0, 4))
def test_filtration_absorption(x, y, n, m):
    x = x.like([0] * n + list(x.coeffs[n:]))
    y = y.like([0] * m + list(y.coeffs[m:]))
    assert C.filtration_level(x * y) >= max(n, m)


# -- units --------------------------------------------------------------------


def test_unit_examples():
    assert C.is_unit(C.adams_to_phi(2, 4))
    assert not C.is_unit(el(1, 4))
    x = Series.one("phi", 4) + el(1, 4).scale(3) - el(2, 4)
    assert C.is_unit(x)
    with pytest.raises(InsufficientPrecision):
        C.is_unit(Series.one("phi", 2, 5, 2))
    with pytest.raises(NotAUnit):
        C.invert(el(1, 4))


def test_invert_examples():
    for p, q in ((3, 2), (5, 2)):
        N = 10
        assert C.invert(C.adams_to_phi(q, N, p, q)) == C.adams_to_phi(F(1, q), N, p, q)
        assert C.invert(Series.one("phi", N, p, q)) == Series.one("phi", N, p, q)


def _random_unit(rng, p, q, prec):
    while True:
        cs = [F(rng.randint(-9, 9), rng.choice([1, 2, 4, 7])) for _ in range(prec + 1)]
        if p == 5 and 5 in [c.denominator for c in cs]:
            continue
        x = Series.from_coeffs("phi", cs, p, q)
        if C.is_unit(x):
            return x


@pytest.mark.parametrize("p,q", [(3, 2), (5, 2)])
def test_invert_random(p, q):
    rng = random.Random(p)
    for _ in range(20):
        x = _random_unit(rng, p, q, 10)
        assert x * C.invert(x) == Series.one("phi", 10, p, q)


def test_summand_units():
    N = 6
    assert C.unit_check_summand(Series.one("phiHat", N) + el(5, N, basis="phiHat"))
    assert not C.unit_check_summand(Series.one("phiHat", N).scale(3) + el(1, N, basis="phiHat"))
    with pytest.raises(BasisMismatch):
        C.unit_check_summand(el(1, N))
    rng = random.Random(11)
    for _ in range(20):
        x = Series.from_coeffs("phiHat", [F(rng.randint(-6, 6), rng.choice([1, 2])) for _ in range(N + 1)])
        ok = C.unit_check_summand(x)
        try:
            y = C.invert(x)
        except NotAUnit:
            assert not ok
        else:
            assert ok and x * y == Series.one("phiHat", N)


# -- idempotents --------------------------------------------------------------


def test_idempotent_frozen_values():
    assert list(C.idempotent(0, 6, 3, 2).coeffs) == [1, -1, F(1, 2), F(-5, 56), F(3, 448), F(-51, 222208), F(187, 49774592)]
    assert list(C.idempotent(1, 6, 5, 2).coeffs) == [0, 1, F(-1, 2), F(1, 12), F(-1, 168), F(397, 1999872), F(-205, 63995904)]


@pytest.mark.parametrize("p,q", [(3, 2), (5, 2), (7, 3)])
def test_idempotent_algebra(p, q):
    N = 10
    es = [C.idempotent(a, N, p, q) for a in range(p - 1)]
    total = es[0]
    for e in es[1:]:
        total = total + e
    assert total == Series.one("phi", N, p, q)
    for a, ea in enumerate(es):
        for i in range(N + 1):
            assert C.act_on_coefficients(ea, i) == (1 if i % (p - 1) == a else 0)
        for b, eb in enumerate(es):
            assert ea * eb == (ea if a == b else Series.zero("phi", N, p, q))


@pytest.mark.parametrize("p,q", [(3, 2), (5, 2), (7, 3)])
def test_idempotent_coefficients_local(p, q):
    for a in range(p - 1):
        for n in range(17):
            assert is_p_local(C.idempotent_coefficient(n, a, p, q), p)


def test_idempotent_guards():
    with pytest.raises(ValueError):
        C.idempotent(2, 4, 3, 2)


# -- summand flavour ----------------------------------------------------------


def test_summand_uses_qhat():
    p, q = 5, 2
    qhat = q ** (p - 1)
    x = el(1, 6, p, q, "phiHat") * el(2, 6, p, q, "phiHat")
    assert x.coeffs[2] == (qhat**2 - 1)
    assert C.adams_to_phi(2, 4, p, q, "phiHat").coeffs[1] == 1
