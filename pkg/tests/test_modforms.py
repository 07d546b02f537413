import math
from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zal import modforms as mf


F600 = mf.eta_product_qexp(600)


class TestEtaProduct:
    def test_normalized(self):
        assert F600.a(1) == 1

    def test_leading_coefficients(self):
        # a_2 .. a_15 of the level-11 eigenform
        assert F600.coeffs[1:15] == (-2, -1, 2, 1, 2, -2, 0, -2, -2, 1, -2, 4, 4, -1)

    def test_level_eigenvalue(self):
        assert F600.a(11) == 1

    def test_multiplicativity_below_500(self):
        f = mf.eta_product_qexp(500)
        for m in range(2, 23):
            for n in range(2, 500 // m + 1):
                if gcd(m, n) == 1:
                    assert f.a(m * n) == f.a(m) * f.a(n)

    @settings(max_examples=50)
    @given(st.integers(min_value=2, max_value=24), st.integers(min_value=2, max_value=24))
    def test_multiplicativity_property(self, m, n):
        if gcd(m, n) == 1:
            assert F600.a(m * n) == F600.a(m) * F600.a(n)

    def test_hecke_recursion_at_prime_powers(self):
        for p in (2, 3, 5, 7, 13):
            for k in range(2, 5):
                if p ** (k + 1) > 600:
                    continue
                assert F600.a(p ** (k + 1)) == \
                    F600.a(p) * F600.a(p ** k) - p * F600.a(p ** (k - 1))

    def test_normalization_enforced(self):
        with pytest.raises(ValueError):
            mf.QExpansion(level=11, weight=2, coeffs=(2, 1))


class TestPointCounting:
    def test_cross_oracle_to_200(self):
        for ell, a in mf.frobenius_traces(200).items():
            assert a == F600.a(ell)

    def test_hasse_bound(self):
        for ell, a in mf.frobenius_traces(120).items():
            assert a * a <= 4 * ell

    def test_bad_prime_rejected(self):
        with pytest.raises(mf.BadPrimeError):
            mf.point_count_ap(11)

    def test_composite_rejected(self):
        with pytest.raises(mf.BadPrimeError):
            mf.point_count_ap(15)

    @pytest.mark.parametrize("ell", [101, 499, 997])
    def test_counting_routes_agree(self, ell):
        assert mf.point_count_ap(ell, exhaustive=True) == \
            mf.point_count_ap(ell, exhaustive=False)


@pytest.fixture(scope="module")
def pet():
    return mf.petersson_norm(F600, tol=1e-8)


@pytest.fixture(scope="module")
def sym():
    return mf.sym2_L_value(mf.eta_product_qexp(8000), 2.0, tol=1e-6, n_terms=8000)


@pytest.fixture(scope="module")
def hida():
    return mf.hida_ratio(tol=1e-6, n_terms=8000)


class TestPetersson:
    def test_positive_with_small_error(self, pet):
        assert pet.value > 0
        assert pet.est_error < 1e-8

    def test_mesh_refinement_stability(self, pet):
        from zal.modforms import _petersson_quadrature
        coeffs = np.array(F600.coeffs[:400], dtype=float)
        a = _petersson_quadrature(coeffs, panels=4, order=12, y_split=1.25)
        b = _petersson_quadrature(coeffs, panels=8, order=16, y_split=1.25)
        assert abs(a - b) <= max(pet.est_error, 1e-12)

    def test_split_height_independence(self, pet):
        from zal.modforms import _petersson_quadrature
        coeffs = np.array(F600.coeffs[:400], dtype=float)
        alt = _petersson_quadrature(coeffs, panels=8, order=16, y_split=1.6)
        assert alt == pytest.approx(pet.value, abs=1e-10)

    def test_zero_form_integrates_to_zero(self):
        from zal.modforms import _parseval_tail, _strip_integrand
        zero = np.zeros(50)
        assert _parseval_tail(zero, 1.25) == 0.0
        assert np.all(_strip_integrand(zero, np.array([0.1]), 1.0) == 0.0)

    def test_fricke_eigenvalue(self, pet):
        assert pet.al_sign == -1

    def test_wrong_level_rejected(self):
        fake = mf.QExpansion(level=7, weight=2, coeffs=(1, -1))
        with pytest.raises(ValueError):
            mf.petersson_norm(fake)


class TestSym2Local:
    def test_good_prime_root_moduli(self):
        for ell in (2, 3, 5, 7, 13):
            lf = mf.sym2_local_poly(ell, F600.a(ell))
            mods = lf.reciprocal_root_moduli()
            assert all(abs(m - ell) < 1e-9 * ell for m in mods)

    def test_hasse_sanity_band_at_edge(self):
        # local factor value at the edge stays in the coarse Hasse band
        for ell in (2, 3, 5, 7, 13, 101):
            lf = mf.sym2_local_poly(ell, F600.a(ell))
            x = ell ** -2.0
            val = sum(c * x ** k for k, c in enumerate(lf.poly_coeffs))
            band = (1 + 4 / math.sqrt(ell)) ** 3
            assert 1 / band <= abs(1 / val) <= band


class TestSym2LValue:
    def test_positive_value(self, sym):
        assert sym.value > 0

    def test_unique_hypothesis(self, sym):
        assert sym.rejected == 19
        assert sym.conductor == 121
        assert sym.bad_beta == 1
        assert sym.sign == 1

    def test_fe_residual(self, sym):
        assert sym.fe_residual < 1e-6

    def test_afe_matches_direct_sum_in_convergence_region(self, sym):
        # deep in absolute convergence the smoothed evaluation must meet
        # the plain partial sum; far-from-center points pay a slowly
        # decaying reflected tail, so the comparison uses growing X
        from zal.modforms import _gamma_completed, _lambda_value, _sym2_dirichlet_coeffs
        f = mf.eta_product_qexp(8000)
        c = _sym2_dirichlet_coeffs(f, 8000, sym.bad_beta)
        direct = mf.dirichlet_direct(f, 4.0, 8000, sym.bad_beta)
        gam = (sym.conductor ** 2.0
               * _gamma_completed(np.array([4.0 + 0j]))[0]).real
        rels = []
        for X in (2.0, 4.0, 8.0):
            lam = _lambda_value(c, 4.0, sym.conductor, sym.sign, X=X)
            rels.append(abs(lam / gam - direct) / direct)
        assert rels[0] > rels[1] > rels[2] or rels[2] < 1e-5
        assert rels[1] < 1e-4

    def test_truncation_study(self, sym):
        from zal.modforms import _lambda_value, _sym2_dirichlet_coeffs
        f = mf.eta_product_qexp(20000)
        full = _sym2_dirichlet_coeffs(f, 20000, sym.bad_beta)
        capped = _sym2_dirichlet_coeffs(f, 20000, sym.bad_beta, prime_cap=10_000)
        l_full = _lambda_value(full, 2.0, sym.conductor, sym.sign, X=1.0)
        l_capped = _lambda_value(capped, 2.0, sym.conductor, sym.sign, X=1.0)
        assert abs(l_full - l_capped) < 1e-6 * abs(l_full)


class TestRationalReconstruction:
    def test_exact_rational_found(self):
        assert mf.reconstruct_rational(8 / 11 + 2e-9, 1e-7) == Fraction(8, 11)

    def test_generic_real_rejected(self):
        assert mf.reconstruct_rational(math.pi / 4, 1e-7) is None

    def test_denominator_bound(self):
        x = 12345 / 99991  # denominator just below 1e5
        assert mf.reconstruct_rational(x, 1e-12, max_den=10_000) is None

    @settings(max_examples=40)
    @given(st.integers(min_value=1, max_value=400),
           st.integers(min_value=1, max_value=9000))
    def test_planted_rationals(self, p, q):
        x = p / q + 3e-10
        got = mf.reconstruct_rational(x, 1e-8)
        assert got == Fraction(p, q).limit_denominator(10_000) or got is None \
            or got == Fraction(p, q)
        if Fraction(p, q).denominator < 1000:
            assert got == Fraction(p, q)


class TestHida:
    def test_finite_positive(self, hida):
        assert hida.ratio > 0 and math.isfinite(hida.ratio)

    def test_rational_found(self, hida):
        assert hida.rational_guess is not None
        assert hida.rational_guess.denominator <= 10_000
        assert hida.combined_error < 1e-6

    def test_negative_control(self, hida):
        perturbed = hida.l_value / (math.pi ** 3 * hida.petersson * (1 + 1e-3))
        assert mf.reconstruct_rational(perturbed, 10 * hida.combined_error) is None


def test_coefficients_csv_format():
    text = mf.coefficients_csv(mf.eta_product_qexp(5))
    assert text == "n,a_n\n1,1\n2,-2\n3,-1\n4,2\n5,1\n"
