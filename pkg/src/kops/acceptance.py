"""The exact acceptance checks, runnable at two depths.

``full`` uses the index bounds of the published criteria; ``small`` shrinks
them for a quick smoke run.  Every comparison is an equality of rationals.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import connective as C
from . import oracle as O
from . import periodic as P
from . import two_local as Z
from .exact_arith import is_p_local, nu
from .series import KO_Q, Series
from .theta import (
    basis_change,
    basis_change_explicit,
    explicit,
    expand_in_theta_basis,
    geometric,
    interleaved,
    quotient_ring_roundtrip,
    stirling_s,
    stirling_S,
    theta_poly,
)

GENERATORS = {3: 2, 5: 2, 7: 3}


@dataclass
class CheckResult:
    name: str
    passed: bool
    elapsed: float
    failures: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "elapsed": round(self.elapsed, 4),
            "failures": self.failures[:10],
        }


class _Log:
    def __init__(self):
        self.failures: list[str] = []

    def check(self, ok: bool, what: str) -> None:
        if not ok:
            self.failures.append(what)


def _bounds(depth: str, full: int, small: int) -> int:
    return full if depth == "full" else small


# -- 1 ----------------------------------------------------------------------


def check_duality(log: _Log, depth: str) -> None:
    top = _bounds(depth, 12, 6)
    for p, q in ((3, 2), (5, 2)):
        for m in range(top + 1):
            op = O.phi_adams(m, q)
            for n in range(top + 1):
                v = O.pairing(op, O.f_basis(n, q))
                log.check(v == (1 if m == n else 0), f"<phi_{m}, f_{n}> = {v} at p={p}")


# -- 2 ----------------------------------------------------------------------


def check_connective_product(log: _Log, depth: str) -> None:
    top = _bounds(depth, 10, 5)
    for p, q in ((3, 2), (5, 2)):
        nodes = geometric(q)
        prec = 2 * top
        for r in range(top + 1):
            x = Series.element("phi", r, prec, p, q)
            for s in range(top + 1):
                got = list((x * Series.element("phi", s, prec, p, q)).coeffs[: r + s + 1])
                want = O.polynomial_product_oracle(r, s, nodes)
                want += [Fraction(0)] * (len(got) - len(want))
                log.check(got == want, f"phi_{r} phi_{s} at p={p}")
        one = Series.element("phi", 1, top + 1, p, q)
        for n in range(top + 1):
            got = one * Series.element("phi", n, top + 1, p, q)
            want = Series.element("phi", n, top + 1, p, q).scale(q**n - 1) + Series.element(
                "phi", n + 1, top + 1, p, q
            )
            log.check(got == want, f"phi_1 phi_{n} at p={p}")


# -- 3 ----------------------------------------------------------------------


def check_coproduct_duality(log: _Log, depth: str) -> None:
    top = _bounds(depth, 8, 4)
    q, p = 2, 3
    for n in range(top + 1):
        t = C.coproduct(Series.element("phi", n, top, p, q))
        for r in range(top + 1):
            for s in range(top + 1):
                want = O.connective_coproduct_oracle(n, r, s, q)
                log.check(t[r, s] == want, f"Delta phi_{n} at ({r},{s})")
    ptop = _bounds(depth, 6, 3)
    F = {j: O.F_basis(j, q) for j in range(ptop + 1)}
    for n in range(ptop + 1):
        t = P.periodic_coproduct(Series.element("Phi", n, ptop, p, q))
        # <Phi_a, F_r> from the oracle, not from the known normalisation
        pair = [[O.pairing(O.Phi_adams(a, q), F[r]) for r in range(ptop + 1)] for a in range(ptop + 1)]
        for r in range(ptop + 1):
            for s in range(ptop + 1):
                lhs = sum(
                    (t[a, b] * pair[a][r] * pair[b][s] for a in range(ptop + 1) for b in range(ptop + 1)),
                    Fraction(0),
                )
                rhs = O.pairing(O.Phi_adams(n, q), F[r] * F[s])
                log.check(lhs == rhs, f"Delta Phi_{n} against F_{r} F_{s}")


# -- 4 ----------------------------------------------------------------------


def check_periodic_pairing(log: _Log, depth: str) -> None:
    top = _bounds(depth, 10, 5)
    for p, q in ((3, 2), (5, 2)):
        for n in range(top + 1):
            op = O.Phi_adams(n, q)
            for j in range(top + 1):
                v = O.pairing(op, O.F_basis(j, q))
                want = Fraction(q) ** (-n * (n // 2)) if n == j else 0
                log.check(v == want, f"<Phi_{n}, F_{j}> = {v} at p={p}")


# -- 5 ----------------------------------------------------------------------


def check_antipode(log: _Log, depth: str) -> None:
    prec = 10
    for p, q, js in ((3, 2, (2, 4, 5, 7, -1, Fraction(1, 2), Fraction(2, 5))), (5, 2, (2, 3, -1, Fraction(3, 7)))):
        for j in js:
            chi = P.antipode(P.periodic_adams_to_Phi(j, prec, p, q))
            log.check(chi == P.periodic_adams_to_Phi(1 / Fraction(j), prec - 1, p, q), f"chi Psi^{j} at p={p}")
        for n in range(_bounds(depth, 6, 3) + 1):
            t = P.periodic_coproduct(Series.element("Phi", n, prec, p, q))
            acc = Series.zero("Phi", prec - 1, p, q)
            for (a, b), c in t.nonzero().items():
                left = P.antipode(Series.element("Phi", a, prec, p, q))
                acc = acc + (left * Series.element("Phi", b, prec - 1, p, q)).scale(c)
            want = Series.one("Phi", prec - 1, p, q).scale(1 if n == 0 else 0)
            log.check(acc == want, f"mul (chi x id) Delta Phi_{n} at p={p}")


# -- 6 ----------------------------------------------------------------------


def check_idempotents(log: _Log, depth: str) -> None:
    primes = (3, 5, 7) if depth == "full" else (3, 5)
    for p in primes:
        q = GENERATORS[p]
        for prec, make, act, one, indices in (
            (12, C.idempotent, C.act_on_coefficients, Series.one("phi", 12, p, q), range(13)),
            (10, P.periodic_idempotent, P.periodic_act_on_coefficients, Series.one("Phi", 10, p, q), range(-5, 6)),
        ):
            es = [make(a, prec, p, q) for a in range(p - 1)]
            total = es[0]
            for e in es[1:]:
                total = total + e
            log.check(total == one, f"sum of idempotents at p={p}, prec={prec}")
            for a, ea in enumerate(es):
                for b, eb in enumerate(es):
                    want = ea if a == b else ea.scale(0)
                    log.check(ea * eb == want, f"e_{a} e_{b} at p={p}, prec={prec}")
                for i in indices:
                    want = 1 if i % (p - 1) == a else 0
                    log.check(act(ea, i) == want, f"e_{a} on degree {i} at p={p}")


# -- 7 ----------------------------------------------------------------------


def _random_unit(rng: random.Random, p: int, q: int, prec: int) -> Series:
    units = [j for j in range(-12, 13) if j and j % p]
    x = Series.one("phi", prec, p, q).scale(rng.choice(units))
    for _ in range(rng.randint(1, 3)):
        j = Fraction(rng.choice(units), rng.choice([u for u in units if u > 0]))
        x = x * C.adams_to_phi(j, prec, p, q)
    noise = [Fraction(rng.randint(-20, 20), rng.choice([1, 2, 4, 7])) for _ in range(prec + 1)]
    # p * (p-local series) changes every coefficient action by a multiple of p
    return x + Series.from_coeffs("phi", noise, p, q).scale(p)


def check_units(log: _Log, depth: str) -> None:
    prec = 12
    for p, q in ((3, 2), (5, 2)):
        for j in (2, 4, 5, 7, -1, Fraction(1, 2), Fraction(7, 11)):
            if Fraction(j).numerator % p == 0:
                continue
            x = C.adams_to_phi(j, prec, p, q)
            log.check(C.is_unit(x), f"Psi^{j} accepted at p={p}")
            y = (x * C.adams_to_phi(q, prec, p, q)).scale(Fraction(-4, 11))
            log.check(C.is_unit(y), f"-4/11 Psi^{j} Psi^{q} accepted at p={p}")
        rng = random.Random(7 + p)
        for _ in range(10):
            coeffs = [0] + [rng.randint(-9, 9) for _ in range(prec)]
            log.check(not C.is_unit(Series.from_coeffs("phi", coeffs, p, q)), f"augmentation 0 rejected: {coeffs}")
    rng = random.Random(2024)
    count = _bounds(depth, 20, 5)
    for k in range(count):
        p = (3, 5)[k % 2]
        x = _random_unit(rng, p, 2, prec)
        log.check(C.is_unit(x), f"random unit #{k} accepted")
        log.check(x * C.invert(x) == Series.one("phi", prec, p, 2), f"x invert(x) = 1 for unit #{k}")


# -- 8 ----------------------------------------------------------------------


def check_basis_change(log: _Log, depth: str) -> None:
    top = _bounds(depth, 10, 6)
    rng = random.Random(11)
    for trial in range(5):
        a = explicit([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(top + 1)])
        b = explicit([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(top + 1)])
        for n in range(top + 1):
            for r in range(n + 1):
                log.check(
                    basis_change(n, r, a, b) == basis_change_explicit(n, r, a, b),
                    f"A_{n},{r} recurrence vs subsets, pair {trial}",
                )
    stop = _bounds(depth, 20, 10)
    for p in (3, 5):
        qhat = GENERATORS[p] ** (p - 1)
        s = [[stirling_s(n, i, qhat) for i in range(stop + 1)] for n in range(stop + 1)]
        S = [[stirling_S(n, i, qhat) for i in range(stop + 1)] for n in range(stop + 1)]
        for n in range(stop + 1):
            for k in range(stop + 1):
                prod = sum((s[n][i] * S[i][k] for i in range(stop + 1)), Fraction(0))
                log.check(prod == (1 if n == k else 0), f"(s S)[{n}][{k}] at p={p}")
            for i in range(n + 1):
                for name, v in (("s", s[n][i]), ("S", S[n][i])):
                    log.check(is_p_local(v, p) and nu(v, p) >= n - i, f"nu_{p} {name}({n},{i}) = {nu(v, p)}")


# -- 9 ----------------------------------------------------------------------


def check_bridge(log: _Log, depth: str) -> None:
    p = 3
    for q in (2, 5):
        for n in range(_bounds(depth, 8, 4) + 1):
            back = P.periodic_to_connective(P.connective_phi_to_Phi(n, 8, p, q), finite=True)
            log.check(back == Series.element("phi", n, 8, p, q), f"phi_{n} round trip at q={q}")
        three = P.periodic_to_connective(Series.element("Phi", 3, 3, p, q), finite=True)
        want = Series.from_coeffs("phi", [0, 0, Fraction(q) ** 2 - Fraction(1, q), 1], p, q)
        log.check(three == want, f"Phi_3 in phi basis at q={q}")
        for n in range(_bounds(depth, 10, 5) + 1):
            # independent phi-expansion of Theta_n by Newton division
            exp = expand_in_theta_basis(theta_poly(n, interleaved(q)), geometric(q))
            for i in range(n // 2 + 1 if n else 0):
                log.check(exp[i] == 0, f"Phi_{n} has phi_{i} coefficient {exp[i]}")
            got = P.periodic_to_connective(Series.element("Phi", n, n, p, q), finite=True)
            log.check(list(got.coeffs) == exp + [Fraction(0)] * (n + 1 - len(exp)), f"Phi_{n} expansion at q={q}")


# -- 10 ---------------------------------------------------------------------


def _zeta(n: int, prec: int) -> Series:
    return Series.element("zeta", n, prec, 2, KO_Q)


def check_two_local(log: _Log, depth: str) -> None:
    top = _bounds(depth, 10, 5)
    prec = 2 * top + 1
    gr = [Z.zeta_to_group_ring(n) for n in range(top + 1)]
    for a in range(top + 1):
        for b in range(top + 1):
            want = Z.group_ring_to_zeta(Z.gr_mul(gr[a], gr[b]), prec)
            log.check(_zeta(a, prec) * _zeta(b, prec) == want, f"zeta_{a} zeta_{b} vs group ring")
    log.check(_zeta(1, 4) * _zeta(1, 4) == _zeta(1, 4).scale(-2), "zeta_1^2 = -2 zeta_1")
    for n in range(top + 1):
        for i in range(top + 1):
            v = Z.zeta_action(n, i)
            log.check(v == Z.gr_action(gr[n], i), f"zeta_{n} on degree {i}")
            if i < n:
                log.check(v == 0, f"zeta_{n} kills degree {i}")
    for m in range(top + 1):
        g = Z.zeta_to_group_ring(2 * m)
        log.check(all(is_p_local(c, 2) for c in g.values()), f"zeta_{2 * m} integrality")
    qtop = _bounds(depth, 8, 4)
    qprec = 2 * qtop + 1
    for a in range(qtop + 1):
        for b in range(qtop + 1):
            lhs = Z.quotient_to_ko(_zeta(a, qprec) * _zeta(b, qprec))
            rhs = Z.quotient_to_ko(_zeta(a, qprec)) * Z.quotient_to_ko(_zeta(b, qprec))
            log.check(lhs == rhs, f"quotient(zeta_{a} zeta_{b})")
    for n in range(qtop + 1):
        lhs = Z.quotient_tensor_to_ko(Z.zeta_coproduct(_zeta(n, 2 * qtop)))
        rhs = Z.ko_coproduct(Z.quotient_to_ko(_zeta(n, 2 * qtop)))
        log.check(lhs.coeffs == rhs.coeffs, f"quotient respects Delta zeta_{n}")


# -- 11 ---------------------------------------------------------------------


def check_quotient_ring(log: _Log, depth: str) -> None:
    p, qhat = 3, 2**6
    rng = random.Random(5)
    polys = [[0] * k + [1] for k in range(9)]
    polys += [list(theta_poly(k, geometric(qhat))) for k in range(6)]
    polys += [[rng.randint(-40, 40) for _ in range(rng.randint(1, 9))] for _ in range(_bounds(depth, 30, 5))]
    for n in range(1, 5):
        for f in polys:
            rt = quotient_ring_roundtrip(n, p, qhat, f)
            log.check(rt.is_identity, f"round trip at level {n} for {f}")


# -- 12 ---------------------------------------------------------------------


def check_hopf_bundle(log: _Log, depth: str) -> None:
    top_i = _bounds(depth, 20, 10)
    for p, q in ((3, 2), (5, 2)):
        for n in range(_bounds(depth, 8, 4) + 1):
            row = C.act_on_hopf_bundle(n, top_i, q)
            for i, v in enumerate(row):
                if i < n:
                    log.check(v == 0, f"t^{i} in phi_{n}(1+t) = {v}")
                log.check(is_p_local(v, p), f"t^{i} in phi_{n}(1+t) not {p}-local")


CHECKS: list[tuple[str, Callable[[_Log, str], None]]] = [
    ("duality", check_duality),
    ("connective_product", check_connective_product),
    ("coproduct_duality", check_coproduct_duality),
    ("periodic_pairing", check_periodic_pairing),
    ("antipode", check_antipode),
    ("idempotents", check_idempotents),
    ("units", check_units),
    ("basis_change", check_basis_change),
    ("bridge", check_bridge),
    ("two_local", check_two_local),
    ("finite_quotient", check_quotient_ring),
    ("hopf_bundle", check_hopf_bundle),
]


def run_check(index: int, depth: str = "full") -> CheckResult:
    name, fn = CHECKS[index]
    log = _Log()
    start = time.perf_counter()
    try:
        fn(log, depth)
    except Exception as exc:  # a crash is a failed check, not a crashed report
        log.failures.append(f"{type(exc).__name__}: {exc}")
    return CheckResult(f"{index + 1:02d}_{name}", not log.failures, time.perf_counter() - start, log.failures)


def run_all(depth: str = "full") -> list[CheckResult]:
    if depth not in ("small", "full"):
        raise ValueError(f"depth must be 'small' or 'full', got {depth!r}")
    return [run_check(i, depth) for i in range(len(CHECKS))]
