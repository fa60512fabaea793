from fractions import Fraction as F

import pytest

from opoly.algebra import Polynomial
from opoly.families import (
    AdmissibilityError,
    FamilySpec,
    MONIC,
    admissibility,
    affine_transform,
    catalog,
    lambda_n,
    spec_from_json,
    spec_to_json,
)
from opoly.structure import generate

from conftest import iter_specs


class TestLambdaN:
    def test_hermite(self):
        assert lambda_n(catalog("hermite"), 3) == 6

    def test_any_spec_at_zero(self):
        for name, params in iter_specs():
            assert lambda_n(catalog(name, params), 0) == 0

    def test_jacobi(self):
        spec = catalog("jacobi", alpha=F(1), beta=F(2))
        assert (spec.a, spec.d) == (-1, -5)
        assert lambda_n(spec, 2) == 12


class TestCatalog:
    def test_charlier_data(self):
        spec = catalog("charlier", mu=F(2))
        assert spec.kind == "discrete"
        assert spec.abcde() == (0, 1, 0, -1, 2)
        assert spec.k(3) == F(-1, 2) ** 3

    def test_hermite_data(self):
        spec = catalog("hermite")
        assert spec.kind == "continuous"
        assert spec.abcde() == (0, 0, 1, -2, 0)
        assert spec.k(5) == 32

    def test_k_family_data(self):
        spec = catalog("k-family", alpha=F(3), beta=F(1, 2))
        assert spec.kind == "discrete"
        assert spec.abcde() == (0, 0, 1, 3, F(1, 2))
        assert spec.k(4) == 81

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            catalog("legendre")

    def test_wrong_parameters(self):
        with pytest.raises(ValueError):
            catalog("laguerre", beta=F(1))

    def test_degenerate_standardization_rejected(self):
        # k_1 = 2 alpha vanishes for Gegenbauer at alpha = 0
        with pytest.raises(AdmissibilityError):
            generate(catalog("gegenbauer", alpha=F(0)), 3)

    def test_monic_variant_is_standard_over_kn(self):
        for name, params in iter_specs():
            spec = catalog(name, params)
            monic = catalog(name + "-monic", params)
            polys = generate(spec, 10)
            monic_polys = generate(monic, 10)
            for n in range(11):
                assert polys[n].scale(1 / spec.k(n)) == monic_polys[n], (name, n)

    def test_tau_degree_enforced(self):
        with pytest.raises(ValueError):
            FamilySpec("continuous", 0, 1, 0, 0, F(3, 2), MONIC)


class TestEquation:
    def test_generated_polynomials_solve_the_equation(self):
        for name, params in iter_specs():
            spec = catalog(name, params)
            for n, p in enumerate(generate(spec, 10)):
                assert spec.apply_operator(p, n).is_zero(), (name, params, n)

    def test_operator_on_monomial_consistency(self):
        # lambda_n is minus the x^n coefficient of (sigma D^2 + tau D) x^n
        for name, params in iter_specs():
            spec = catalog(name, params)
            zero_spec = spec
            for n in range(16):
                x_n = Polynomial.monomial(n)
                if spec.kind == "continuous":
                    op = spec.sigma() * x_n.derivative().derivative() + spec.tau() * x_n.derivative()
                else:
                    op = spec.sigma() * x_n.delta().nabla() + spec.tau() * x_n.delta()
                assert lambda_n(zero_spec, n) == -op.coeff(n), (name, n)


class TestAdmissibility:
    def test_hermite_all_formulas_ok(self):
        assert admissibility(catalog("hermite"), 10).ok

    def test_gegenbauer_degenerate_alpha(self):
        # d + 2an = -(2 alpha + 1) - 2n vanishes at n = 1 for alpha = -3/2
        spec = FamilySpec("continuous", -1, 0, 1, 2, 0, MONIC, "gegenbauer(-3/2)")
        report = admissibility(spec, 10)
        assert not report.ok
        assert any(n == 1 for (_, n, _) in report.failures)

    def test_generation_aborts_with_structured_error(self):
        spec = FamilySpec("continuous", -1, 0, 1, 2, 0, MONIC)
        with pytest.raises(AdmissibilityError):
            generate(spec, 5)

    def test_vanishing_standardization_reported(self):
        # k_1 = 2 alpha vanishes for Gegenbauer at alpha = 0
        report = admissibility(catalog("gegenbauer", alpha=F(0)), 6)
        assert not report.ok
        assert any(formula == "leading" for (formula, _, _) in report.failures)


class TestAffineTransform:
    def test_jacobi_shift_kills_constant_term(self):
        spec = catalog("jacobi", alpha=F(1, 2), beta=F(2))
        shifted = affine_transform(spec, F(-1, 2), F(1, 2))  # u = (1-x)/2
        assert shifted.c == 0
        assert shifted.e == F(3, 2)  # alpha + 1
        # q_n(u) = p_n(1 - 2u)
        polys = generate(spec, 6)
        shifted_polys = generate(shifted, 6)
        for n in range(7):
            assert polys[n].compose_affine(F(-2), F(1)) == shifted_polys[n]

    def test_discrete_rejected(self):
        with pytest.raises(ValueError):
            affine_transform(catalog("charlier", mu=F(1)), F(1), F(1))


class TestSpecJson:
    def test_catalog_round_trip(self):
        spec = catalog("meixner", gamma=F(2), mu=F(1, 3))
        data = spec_to_json(spec)
        assert data["kind"] == "discrete"
        back = spec_from_json(data)
        assert back.abcde() == spec.abcde()
        assert back.k(5) == spec.k(5)

    def test_raw_monic_round_trip(self):
        spec = FamilySpec("continuous", 0, 1, 0, -1, F(3, 2), MONIC)
        back = spec_from_json(spec_to_json(spec))
        assert back.abcde() == spec.abcde()
        assert back.is_monic()
