"""The 2-local zeta basis, its coproduct, and the quotient onto ko.

Run with ``python3 demos/two_local_quotient.py``.
"""

from kops import two_local as Z
from kops.series import Series


def zeta(n: int, prec: int = 10) -> Series:
    return Series.element("zeta", n, prec)


def show_group_ring(g: dict) -> str:
    parts = []
    for (k, t), c in sorted(g.items()):
        mono = "".join(s for s, e in (("S" if k == 1 else f"S^{k}", k), ("T", t)) if e) or "1"
        parts.append(f"{c}*{mono}")
    return " + ".join(parts)


def main() -> None:
    for n in range(5):
        print(f"zeta_{n} = {show_group_ring(Z.zeta_to_group_ring(n))}")

    print("\nzeta_1^2 =", zeta(1) * zeta(1))
    print("zeta_2^2 =", zeta(2) * zeta(2))

    true = dict(((a, b), c) for a, b, c in Z.zeta_coproduct_terms(2))
    stated = dict(((a, b), c) for a, b, c in Z.zeta_coproduct_stated_terms(2))
    print("\nDelta zeta_2 from the group-like expansion:", {k: str(v) for k, v in sorted(true.items())})
    print("even-index closed form:               ", {k: str(v) for k, v in sorted(stated.items())})
    extra = sorted(set(true) - set(stated))
    print("terms only in the first, all with an odd factor:", extra)

    x = zeta(2) * zeta(4) + zeta(3)
    print("\nquotient(zeta_2 zeta_4 + zeta_3) =", Z.quotient_to_ko(x))
    print("quotient(zeta_2) quotient(zeta_4) =", Z.quotient_to_ko(zeta(2)) * Z.quotient_to_ko(zeta(4)))


if __name__ == "__main__":
    main()
