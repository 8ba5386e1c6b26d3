"""A walk through the connective operation algebra at p = 3, q = 2.

Run with ``python3 demos/connective_tour.py``.
"""

from fractions import Fraction

from kops import connective as C
from kops.series import Series

P, Q, N = 3, 2, 6


def phi(n: int) -> Series:
    return Series.element("phi", n, N, P, Q)


def main() -> None:
    print("phi_1 * phi_3 =", phi(1) * phi(3))
    print("phi_2 * phi_2 =", phi(2) * phi(2))

    psi = C.adams_to_phi(Fraction(4, 5), N, P, Q)
    print("\nPsi^(4/5) =", psi)
    print("its eigenvalues on pi_0..pi_6:", [str(C.act_on_coefficients(psi, i)) for i in range(N + 1)])

    t = C.coproduct(phi(2))
    print("\nDelta phi_2 terms:", {k: str(v) for k, v in sorted(t.nonzero().items())})

    x = Series.one("phi", N, P, Q) + phi(1).scale(3) - phi(2)
    y = C.invert(x)
    print("\nx = 1 + 3 phi_1 - phi_2 is a unit:", C.is_unit(x))
    print("x^-1 =", y)
    print("x * x^-1 =", x * y)

    print("\nphi_1^2 / phi_1 =", C.divide_by_phi1(phi(1) * phi(1), 1))

    e0, e1 = C.idempotent(0, N, P, Q), C.idempotent(1, N, P, Q)
    print("\ne_0 =", e0)
    print("e_0 acts on pi_0..pi_6 as", [str(C.act_on_coefficients(e0, i)) for i in range(N + 1)])
    print("e_0 * e_1 is zero:", (e0 * e1).is_zero())

    print("\nphi_3(1 + t) =", [str(c) for c in C.act_on_hopf_bundle(3, 7, Q)])


if __name__ == "__main__":
    main()
