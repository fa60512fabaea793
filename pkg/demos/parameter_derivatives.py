#!/usr/bin/env python3
"""Parameter derivatives, verified without any limits or floats.

d p_n / d theta expands over the same family.  The printed formulas arise
as limits of connection coefficients; here each one is checked against a
fully exact route: instantiate the family over the field of rational
functions in theta, generate, differentiate every coefficient as a rational
function, and evaluate back at the parameter point.
"""

from fractions import Fraction as F

from opoly import (
    binomial_partial_sum,
    exact_parameter_derivative,
    parameter_derivative,
)


def main():
    row = parameter_derivative("laguerre", "alpha", 4, {"alpha": F(2)})
    print("d/dalpha L^(2)_4 over L^(2)_m:", row.coeffs, " [1/(n-m)]")
    oracle = exact_parameter_derivative("laguerre", "alpha", 4, {"alpha": F(2)})
    print("field-derivative oracle agrees:", row.coeffs == oracle.coeffs)
    print()

    at = {"alpha": F(1, 2), "beta": F(1, 3), "N": F(12)}
    row = parameter_derivative("hahn", "beta", 3, at)
    print("d/dbeta h^(1/2,1/3)_3(x, 12):", row.coeffs)
    print("oracle agrees:",
          row.coeffs == exact_parameter_derivative("hahn", "beta", 3, at).coeffs)
    print()

    row = parameter_derivative("charlier", "mu", 5, {"mu": F(2)})
    print("d/dmu c^(2)_5: two terms only:", row.coeffs, " [n/mu, -n/mu]")
    print()

    # bonus: the antidifference of the falling factorial proves the
    # partial-sum identity sum_{k<=m} C(n+k, k) = C(n+m+1, m)
    lhs, rhs = binomial_partial_sum(5, 7)
    print("sum_{k=0..7} C(5+k, k) =", lhs, "= C(13, 7) =", rhs)


if __name__ == "__main__":
    main()
