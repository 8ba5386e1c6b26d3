"""The antipode of the periodic algebra, checked on group-likes and on Phi_n.

Run with ``python3 demos/periodic_antipode.py``.
"""

from fractions import Fraction

from kops import periodic as P
from kops.series import Series

N = 8


def Phi(n: int, prec: int = N) -> Series:
    return Series.element("Phi", n, prec)


def main() -> None:
    for j in (Fraction(2), Fraction(-1), Fraction(2, 5)):
        chi = P.antipode(P.periodic_adams_to_Phi(j, N))
        same = chi == P.periodic_adams_to_Phi(1 / j, N - 1)
        print(f"chi(Psi^{j}) == Psi^{1 / j}: {same}")

    print("\nchi(Phi_3) =", P.antipode(Phi(3)))

    # mul (chi x id) Delta Phi_n should be the counit of Phi_n times 1
    for n in range(5):
        acc = Series.zero("Phi", N - 1)
        for (a, b), c in P.periodic_coproduct(Phi(n)).nonzero().items():
            acc = acc + (P.antipode(Phi(a)) * Phi(b, N - 1)).scale(c)
        print(f"Hopf axiom on Phi_{n}: {acc}")

    print("\nPhi_3 in the phi basis:", P.periodic_to_connective(Phi(3, 3), finite=True))
    print("phi_4 in the Phi basis:", P.connective_phi_to_Phi(4, 4))

    E = [P.periodic_idempotent(a, 6) for a in range(2)]
    print("\nE_0 =", E[0])
    print("E_0 on pi_-3..pi_3:", [str(P.periodic_act_on_coefficients(E[0], i)) for i in range(-3, 4)])


if __name__ == "__main__":
    main()
