#!/usr/bin/env python3
"""Series coefficients, terminating hypergeometric forms, and inversions.

Substituting a power series (or falling-factorial series) into the defining
equation gives a short recurrence for the coefficients; when sigma has no
constant term it collapses to two terms and the whole polynomial is a single
terminating hypergeometric sum.  The inverse problem expands x^n over a
family basis.
"""

import json
from fractions import Fraction as F

from opoly import (
    UnsupportedRepresentation,
    affine_transform,
    catalog,
    closed_form,
    descriptor_to_json,
    expand_descriptor,
    falling_coeffs,
    falling_in_basis,
    power_coeffs,
    power_in_basis,
)


def main():
    laguerre = catalog("laguerre", alpha=F(1, 2))
    print("Laguerre(1/2) series coefficients of p_3:",
          power_coeffs(laguerre, 3).coeffs)
    desc = closed_form(laguerre)
    print("closed form:", json.dumps(descriptor_to_json(desc, 3)))
    print("expansion == series:",
          expand_descriptor(desc, 3).coeffs == power_coeffs(laguerre, 3).coeffs)
    print()

    charlier = catalog("charlier", mu=F(2))
    print("Charlier(2) falling-factorial coefficients of p_3:",
          falling_coeffs(charlier, 3).coeffs)
    print("closed form:", json.dumps(descriptor_to_json(closed_form(charlier), 3)))
    print()

    # Jacobi has no power series form at the origin, but the change of
    # variable u = (1 - x)/2 moves a zero of sigma there.
    jacobi = catalog("jacobi", alpha=F(1, 2), beta=F(2))
    try:
        closed_form(jacobi)
    except UnsupportedRepresentation as exc:
        print("Jacobi at the origin:", exc)
    shifted = affine_transform(jacobi, F(-1, 2), F(1, 2))
    print("shifted closed form:", json.dumps(descriptor_to_json(closed_form(shifted), 2)))
    print()

    # Hermite: sigma = 1 never loses its constant term, but b = e = 0 gives
    # the even/odd series descending from x^n in steps of two.
    print("Hermite closed form:",
          json.dumps(descriptor_to_json(closed_form(catalog("hermite")), 4)))
    print()

    # inverse problem: x^n over a family basis
    print("x^2 over Hermite:", power_in_basis(catalog("hermite"), 2).coeffs,
          " (x^2 = H_2/4 + H_0/2)")
    print("x_falling^3 over Charlier(2):",
          falling_in_basis(charlier, 3).coeffs)


if __name__ == "__main__":
    main()
