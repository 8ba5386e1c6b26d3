from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kops import connective as C
from kops import periodic as P
from kops.errors import BasisMismatch, InsufficientPrecision, NotAUnit
from kops.oracle import polynomial_product_oracle
from kops.series import Series
from kops.theta import interleaved, poly_add, poly_scale, poly_trim, theta_eval, theta_poly

from .conftest import local_fractions

F = Fraction


def Phi(n, prec=8, p=3, q=2, basis="Phi"):
    return Series.element(basis, n, prec, p, q)


def periodic_strategy(p=3, q=2, prec=6):
    return st.lists(local_fractions(p, 8, 4), min_size=prec + 1, max_size=prec + 1).map(
        lambda cs: Series.from_coeffs("Phi", cs, p, q)
    )


# -- exponents and Adams expansions -------------------------------------------


def test_e_exponent():
    assert P.e_exponent(4, 1) == 0
    assert P.e_exponent(4, 0) == 2
    assert P.e_exponent(3, 1) == -1
    assert P.e_exponent(3, 3) == 0


def test_Phi_to_adams_examples():
    assert P.Phi_to_adams(1, 2) == {0: -1, 1: 1}
    assert P.Phi_to_adams(0, 2) == {0: 1}
    # reconstruct Theta_3 from the expansion: Psi^(q^j) evaluates to X^j with X the node variable
    q = 2
    x = [F(q) ** j for j in range(-3, 4)]
    for v in x:
        val = sum(c * v ** j for j, c in P.Phi_to_adams(3, q).items())
        assert val == (v - 1) * (v - 2) * (v - F(1, 2))


@pytest.mark.parametrize("q", [2, 3])
def test_Phi_to_adams_matches_theta(q):
    c = interleaved(q)
    for n in range(8):
        m = P.Phi_to_adams(n, q)
        # shift by the lowest exponent to get a plain polynomial
        lo = min(m)
        poly: tuple = ()
        for j, a in m.items():
            poly = poly_add(poly, tuple([F(0)] * (j - lo) + [a]))
        for v in (F(5), F(-2, 3), F(7, 4)):
            assert sum(a * v**k for k, a in enumerate(poly)) * v**lo == theta_eval(n, c, v)


def test_periodic_adams_to_Phi_examples():
    q = 2
    assert list(P.periodic_adams_to_Phi(q, 6).coeffs) == [1, 1, 0, 0, 0, 0, 0]
    assert list(P.periodic_adams_to_Phi(1, 6).coeffs) == [1, 0, 0, 0, 0, 0, 0]
    x = P.periodic_adams_to_Phi(F(1, q), 6)
    for n in range(7):
        want = F(q) ** ((n + 1) * (n // 2)) * C.theta_geometric(n, q, F(1, q)) / C.theta_geometric(n, q, F(q) ** n)
        assert x.coeffs[n] == want
    with pytest.raises(NotAUnit):
        P.periodic_adams_to_Phi(6, 4)


@pytest.mark.parametrize("p,q", [(3, 2), (5, 2)])
def test_periodic_adams_homomorphism(p, q):
    js = [F(2), F(1, 2), F(-1), F(4, 7)]
    for j in js:
        for k in js:
            lhs = P.periodic_adams_to_Phi(j, 8, p, q) * P.periodic_adams_to_Phi(k, 8, p, q)
            assert lhs == P.periodic_adams_to_Phi(j * k, 8, p, q)


# -- product ------------------------------------------------------------------


def test_product_frozen_values():
    assert list((Phi(2, 5) * Phi(3, 5)).coeffs) == [0, 0, 0, 6, F(5, 4), 1]
    assert list((Phi(3, 6, 5, 3) * Phi(3, 6, 5, 3)).coeffs) == [0, 0, 0, 416, F(3796, 81), F(286, 9), 1]


@pytest.mark.parametrize("q", [2, 3])
def test_product_matches_polynomial_oracle(q):
    p = 3 if q == 2 else 5
    for r in range(7):
        for s in range(7):
            got = (Phi(r, r + s, p, q) * Phi(s, r + s, p, q)).coeffs
            assert list(got) == polynomial_product_oracle(r, s, interleaved(q))


def test_hat_product_matches_oracle():
    p, q = 3, 2
    qhat = q ** (p - 1)
    x = Phi(2, 4, p, q, "PhiHat")
    assert list((x * x).coeffs) == [0, 0, F(45, 16), F(45, 4), 1]
    for r in range(5):
        for s in range(5):
            got = (Phi(r, r + s, p, q, "PhiHat") * Phi(s, r + s, p, q, "PhiHat")).coeffs
            assert list(got) == polynomial_product_oracle(r, s, interleaved(qhat))


@given(periodic_strategy(), periodic_strategy(), periodic_strategy())
def test_ring_axioms(x, y, z):
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert Series.one("Phi", 6) * x == x


def test_bridge_product_agreement():
    for r in range(9):
        for s in range(9):
            N = r + s
            lhs = P.periodic_to_connective(Phi(r, N) * Phi(s, N), finite=True)
            a = P.periodic_to_connective(Phi(r, N), finite=True)
            b = P.periodic_to_connective(Phi(s, N), finite=True)
            assert lhs == a * b


def test_low_degree_bridge():
    assert list(P.periodic_to_connective(Phi(1, 3), finite=True).coeffs) == [0, 1, 0, 0]
    assert list(P.periodic_to_connective(Phi(2, 3), finite=True).coeffs) == [0, 0, 1, 0]
    q = F(2)
    assert list(P.periodic_to_connective(Phi(3, 3), finite=True).coeffs) == [0, 0, q**2 - 1 / q, 1]
    assert list(P.periodic_to_connective(Phi(4, 4), finite=True).coeffs) == [0, 0, 0, F(15, 2), 1]
    assert list(P.periodic_to_connective(Phi(5, 5, 5, 3), finite=True).coeffs) == [0, 0, 0, F(19360, 27), F(968, 9), 1]


def test_periodic_to_connective_precision():
    x = Series.from_coeffs("Phi", [1, 2, 3, 4, 5, 6, 7])
    y = P.periodic_to_connective(x)
    assert y.prec == 3
    # coefficients up to that precision ignore anything above Phi_6
    z = P.periodic_to_connective(x.pad(10).like(list(x.coeffs) + [9, 9, 9, 9]))
    assert z.truncate(3) == y


def test_connective_to_periodic():
    assert list(P.connective_phi_to_Phi(4, 4).coeffs) == [0, 0, F(105, 4), F(-15, 2), 1]
    assert P.connective_phi_to_Phi(0, 3) == Series.one("Phi", 3)
    assert P.connective_phi_to_Phi(1, 3) == Phi(1, 3)
    for n in range(9):
        back = P.periodic_to_connective(P.connective_phi_to_Phi(n, n), finite=True)
        assert back == Series.element("phi", n, n)
    with pytest.raises(BasisMismatch):
        P.connective_phi_to_Phi(2, 3, basis="phi")


# -- coproduct ------------------------------------------------------------------


def test_coproduct_examples():
    assert P.periodic_coproduct(Phi(0, 3)).nonzero() == {(0, 0): 1}
    assert P.periodic_coproduct(Phi(1, 3)).nonzero() == {(1, 1): 1, (0, 1): 1, (1, 0): 1}


def test_coproduct_exact_degree():
    assert P.periodic_coproduct(Phi(0, 4)).exact_degree == 3
    assert P.periodic_coproduct(Phi(0, 5)).exact_degree == 5
    assert P.periodic_coproduct(Phi(0, 0)).exact_degree == 0


def test_coproduct_odd_band():
    # an odd Phi_n (n >= 3) reaches total degree n - 1
    for n in (3, 5, 7):
        t = P.periodic_coproduct(Phi(n, n))
        assert any(a + b == n - 1 for a, b in t.nonzero())
    for n in (1, 2, 4, 6):
        t = P.periodic_coproduct(Phi(n, n))
        assert all(a + b >= n for a, b in t.nonzero())


def test_coproduct_is_algebra_map():
    for r in range(6):
        for s in range(6):
            N = 9
            lhs = P.periodic_coproduct(Phi(r, N) * Phi(s, N))
            rhs = P.periodic_coproduct(Phi(r, N)) * P.periodic_coproduct(Phi(s, N))
            assert lhs.congruent(rhs)


def test_coproduct_on_group_likes():
    x = P.periodic_adams_to_Phi(F(-2, 5), 7)
    t = P.periodic_coproduct(x)
    for a in range(8):
        for b in range(8 - a):
            if a + b <= t.exact_degree:
                assert t[a, b] == x.coeffs[a] * x.coeffs[b]


# -- antipode -------------------------------------------------------------------


def test_antipode_frozen_values():
    assert list(P.antipode(Phi(3, 7)).coeffs) == [0, 0, 0, F(-1, 64), F(273, 16), F(-1127, 512), F(7463, 64)]
    assert list(P.antipode(Phi(4, 8)).coeffs) == [0, 0, 0, F(15, 256), F(1, 64), F(-15, 4096), F(274895, 512), F(-2216475, 65536)]


def test_antipode_basics():
    assert P.antipode(Series.one("Phi", 5)) == Series.one("Phi", 4)
    assert P.antipode(Phi(2, 6)).prec == 5
    with pytest.raises(InsufficientPrecision):
        P.antipode(Series.one("Phi", 0))


@pytest.mark.parametrize("j", [F(2), F(1, 2), F(-1), F(5, 7)])
def test_antipode_inverts_group_likes(j):
    N = 9
    x = P.periodic_adams_to_Phi(j, N)
    assert P.antipode(x) == P.periodic_adams_to_Phi(1 / j, N - 1)
    assert P.antipode(P.antipode(x)) == x.truncate(N - 2)


def test_antipode_support():
    for n in range(10):
        start = P.antipode_support_start(n)
        for j in range(start):
            assert P.antipode_coefficient(n, j, 2) == 0
        if n:
            assert P.antipode_coefficient(n, start, 2) != 0


@pytest.mark.parametrize("n", range(7))
def test_hopf_axiom(n):
    N = n + 4
    t = P.periodic_coproduct(Phi(n, N + 1))
    acc = Series.zero("Phi", N)
    for (a, b), c in t.nonzero().items():
        acc = acc + (P.antipode(Phi(a, N + 1)) * Phi(b, N)).scale(c)
    assert acc == Series.one("Phi", N).scale(1 if n == 0 else 0)


# -- actions and idempotents -------------------------------------------------------


def test_periodic_action():
    nodes = interleaved(2)
    for n in range(7):
        for i in range(-3, 4):
            v = P.periodic_act_on_coefficients(Phi(n, 6), i)
            assert v == theta_eval(n, nodes, F(2) ** i)
            if any(F(2) ** i == nodes(k) for k in range(1, n + 1)):
                assert v == 0
    x = P.periodic_adams_to_Phi(2, 4)
    assert P.periodic_act_on_coefficients(x, -1) == F(1, 2)
    assert P.periodic_act_on_coefficients(Series.from_coeffs("Phi", [F(7, 2), 1]), 0) == F(7, 2)
    with pytest.raises(InsufficientPrecision):
        P.periodic_act_on_coefficients(Phi(1, 3), 2)


@given(periodic_strategy(prec=8), periodic_strategy(prec=8))
def test_periodic_action_is_ring_map(x, y):
    for i in range(-4, 5):
        lhs = P.periodic_act_on_coefficients(x * y, i)
        assert lhs == P.periodic_act_on_coefficients(x, i) * P.periodic_act_on_coefficients(y, i)


def test_periodic_idempotent_frozen():
    assert list(P.periodic_idempotent(0, 6, 3, 2).coeffs) == [1, -1, -2, F(5, 7), F(12, 7), F(-51, 217), F(-1496, 1519)]


@pytest.mark.parametrize("p,q", [(3, 2), (5, 2), (7, 3)])
def test_periodic_idempotents(p, q):
    N = 10
    es = [P.periodic_idempotent(a, N, p, q) for a in range(p - 1)]
    total = es[0]
    for e in es[1:]:
        total = total + e
    assert total == Series.one("Phi", N, p, q)
    for a, e in enumerate(es):
        assert e * e == e
        for i in range(-(N // 2), N // 2 + 1):
            assert P.periodic_act_on_coefficients(e, i) == (1 if (i - a) % (p - 1) == 0 else 0)


def test_experimental_unit():
    assert P.experimental_is_unit(P.periodic_adams_to_Phi(2, 6))
    assert not P.experimental_is_unit(Phi(1, 6))
    with pytest.raises(BasisMismatch):
        P.experimental_is_unit(Phi(1, 6, basis="PhiHat"))
