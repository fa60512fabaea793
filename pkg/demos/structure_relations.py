#!/usr/bin/env python3
"""Tour of the structural coefficient machinery.

Every classical family is the data (a, b, c, d, e) of a second-order
differential or difference equation plus a standardization k_n.  From those
five numbers the library evaluates, exactly, the three-term recurrence, the
derivative/difference rules, and the expansion of p_n over the derivatives
of its neighbors -- which is the same thing as an antiderivative or
antidifference table.
"""

from fractions import Fraction as F

from opoly import (
    antidifference,
    antiderivative,
    catalog,
    generate,
    lambda_n,
    recurrence_coeffs,
    theorem1_coeffs,
    verify_structure,
)


def main():
    hermite = catalog("hermite")
    print("Hermite data: sigma =", hermite.sigma(), " tau =", hermite.tau())
    print("eigenvalues lambda_n =", [lambda_n(hermite, n) for n in range(6)])
    print("polynomials:", generate(hermite, 4))
    print("recurrence triples (A_n, B_n, C_n):",
          [tuple(recurrence_coeffs(hermite, n)) for n in range(4)])
    print()

    # The hatted triple expands p_n over derivatives of its neighbors; read
    # as an antiderivative table it gives, e.g., int H_n = H_{n+1}/(2(n+1)).
    for n in range(1, 5):
        hat = theorem1_coeffs(hermite, n)["hatted"]
        print(f"int H_{n} dx = {hat.hi} * H_{n + 1}(x) + C")
    print()

    jacobi = catalog("jacobi", alpha=F(1, 2), beta=F(2))
    hat = antiderivative(jacobi, 3)
    print("Jacobi(1/2, 2): int P_3 =",
          f"{hat.hi} P_4 + {hat.mid} P_3 + {hat.lo} P_2  (+ C)")

    meixner = catalog("meixner", gamma=F(2), mu=F(1, 3))
    hat = antidifference(meixner, 3)
    print("Meixner(2, 1/3): sum_x m_3 =",
          f"{hat.hi} m_4 + {hat.mid} m_3 + {hat.lo} m_2")
    print()

    # every relation is checked as an exact polynomial identity
    for name, params in [("jacobi", dict(alpha=F(1, 2), beta=F(-1, 3))),
                         ("hahn", dict(alpha=F(1, 2), beta=F(1, 3), N=F(12))),
                         ("k-family", dict(alpha=F(3), beta=F(1, 2)))]:
        report = verify_structure(catalog(name, **params), 8)
        print(f"verify_structure({name}, n_max=8): "
              f"{len(report.checks)} residuals, all zero: {report.ok}")


if __name__ == "__main__":
    main()
