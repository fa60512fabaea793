#!/usr/bin/env python3
"""Connection coefficients three ways.

P_n = sum_m C_m(n) Q_m is computed by (1) a unitriangular solve over the
monomial expansions (works for any pair), (2) a pure recurrence in m derived
by exact elimination from the cross rules (monic pairs sharing sigma, or
sigma + tau in the discrete case), and (3) the printed hypergeometric-term
formulas for the classical shift pairs.  All three agree exactly.
"""

from fractions import Fraction as F

from opoly import (
    catalog,
    closed_form_connection,
    compat,
    connect_oracle,
    connect_recurrence,
)


def main():
    lag2 = catalog("laguerre", alpha=F(2))
    lag0 = catalog("laguerre", alpha=F(0))
    row = connect_oracle(lag2, lag0, 3)
    print("L^(2)_3 over L^(0):", row.coeffs, " [(2)_{3-m}/(3-m)!]")
    closed = closed_form_connection("laguerre", 3, alpha=F(2), beta=F(0))
    print("closed form agrees:", closed.coeffs == row.coeffs)
    print()

    ch2 = catalog("charlier-monic", mu=F(2))
    ch3 = catalog("charlier-monic", mu=F(3))
    print("compat(charlier pair):", compat(ch2, ch3))
    for n in range(4):
        rec = connect_recurrence(ch2, ch3, n)
        assert rec.coeffs == connect_oracle(ch2, ch3, n).coeffs
        print(f"  monic Charlier(2) -> Charlier(3), n={n}: {rec.coeffs}")
    print()

    # Hahn alpha shifts leave sigma + tau fixed (the second discrete branch)
    h1 = catalog("hahn-monic", alpha=F(1, 2), beta=F(1, 3), N=F(12))
    h2 = catalog("hahn-monic", alpha=F(2), beta=F(1, 3), N=F(12))
    print("compat(Hahn alpha shift):", compat(h1, h2))
    print("row n=4:", connect_recurrence(h1, h2, 4).coeffs)
    print()

    # symmetric Hahn pairs step by two in degree
    row = closed_form_connection("hahn-symmetric", 6,
                                 alpha=F(1, 2), gamma=F(2), N=F(14))
    ps = catalog("hahn", alpha=F(1, 2), beta=F(1, 2), N=F(14))
    qs = catalog("hahn", alpha=F(2), beta=F(2), N=F(14))
    print("h^(1/2,1/2)_6 over h^(2,2), even slots only:", row.coeffs)
    print("agrees with oracle:", row.coeffs == connect_oracle(ps, qs, 6).coeffs)
    print()

    # pairs with different sigma still work through the oracle
    row = connect_oracle(catalog("hermite"), catalog("gegenbauer", alpha=F(1)), 4)
    print("H_4 over C^(1):", row.coeffs)


if __name__ == "__main__":
    main()
