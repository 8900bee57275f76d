import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from fracspec import (
    BranchCutViolation,
    DomainError,
    fractional_kernel,
    mittag_leffler,
    mittag_leffler_array,
    polynomial_weight_laplace,
    principal_power,
    upper_incomplete_gamma,
)
from conftest import ml_half_reference, ml_reference


class TestPrincipalPower:
    def test_positive_real_base(self):
        assert principal_power(4.0, 0.5) == pytest.approx(2.0)

    def test_imaginary_base_halves_argument(self):
        got = principal_power(1j, 0.5)
        assert got == pytest.approx(cmath.rect(1.0, math.pi / 4), abs=1e-12)

    @pytest.mark.parametrize("lam", [-2.0 + 0j, -1e-8, 0.0 + 0j])
    def test_cut_rejected(self, lam):
        with pytest.raises(BranchCutViolation):
            principal_power(lam, 0.5)

    @given(
        r=st.floats(0.01, 50.0),
        theta=st.floats(-3.1, 3.1),
        alpha=st.floats(0.05, 1.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_power_splitting_and_conjugation(self, r, theta, alpha):
        lam = cmath.rect(r, theta)
        recomposed = principal_power(lam, alpha) * principal_power(lam, 1.0 - alpha)
        assert abs(recomposed - lam) <= 1e-13 * abs(lam)
        assert principal_power(lam.conjugate(), alpha) == pytest.approx(
            principal_power(lam, alpha).conjugate(), rel=1e-13
        )


class TestKernel:
    def test_alpha_one_is_flat(self):
        assert fractional_kernel(1.0, 7.3) == pytest.approx(1.0)

    def test_alpha_two(self):
        assert fractional_kernel(2.0, 3.0) == pytest.approx(3.0)

    def test_sqrt_kernel(self):
        assert fractional_kernel(0.5, 1.0) == pytest.approx(1.0 / math.sqrt(math.pi))

    def test_domain(self):
        with pytest.raises(DomainError):
            fractional_kernel(0.5, 0.0)
        with pytest.raises(DomainError):
            fractional_kernel(-0.5, 1.0)

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.9])
    @pytest.mark.parametrize("t_end", [1.0, 5.0])
    def test_kernel_integrates_to_power(self, alpha, t_end):
        val, _ = quad(lambda t: fractional_kernel(alpha, t), 0.0, t_end, points=[0.0])
        assert val == pytest.approx(t_end ** alpha / math.gamma(alpha + 1.0), abs=1e-8)


class TestUpperIncompleteGamma:
    def test_a_one_is_exp(self):
        assert upper_incomplete_gamma(1.0, 1.0) == pytest.approx(math.exp(-1.0), rel=1e-13)

    def test_at_zero_is_factorial(self):
        for n in range(11):
            assert upper_incomplete_gamma(n + 1.0, 0.0) == pytest.approx(
                math.factorial(n), rel=1e-12
            )

    def test_against_quadrature_oracle(self):
        # oracle: adaptive quadrature of the defining integral
        for a, x in [(2.0, 1.0), (0.5, 2.0), (7.5, 3.0), (0.0, 1.5), (12.0, 30.0)]:
            if a == 0.0:
                oracle, _ = quad(lambda t: math.exp(-t) / t, x, np.inf)
            else:
                oracle, _ = quad(lambda t: t ** (a - 1.0) * math.exp(-t), x, np.inf)
            assert upper_incomplete_gamma(a, x) == pytest.approx(oracle, rel=1e-10)

    def test_value_quoted_in_contract(self):
        assert upper_incomplete_gamma(2.0, 1.0) == pytest.approx(0.7357589, abs=5e-8)

    def test_domain(self):
        with pytest.raises(DomainError):
            upper_incomplete_gamma(-1.0, 1.0)
        with pytest.raises(DomainError):
            upper_incomplete_gamma(0.0, 0.0)


class TestWeightLaplace:
    def test_degree_zero(self):
        assert polynomial_weight_laplace(0, 2.0) == pytest.approx(0.5)

    def test_degree_one(self):
        assert polynomial_weight_laplace(1, 1.0) == pytest.approx(2.0)

    def test_degree_two(self):
        assert polynomial_weight_laplace(2, 1.0) == pytest.approx(5.0)

    def test_matches_incomplete_gamma_form(self):
        for n in range(6):
            for s in [0.5, 1.0, 3.7]:
                closed = math.exp(s) * upper_incomplete_gamma(n + 1.0, s) / s ** (n + 1)
                assert polynomial_weight_laplace(n, s) == pytest.approx(closed, rel=1e-12)

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    @pytest.mark.parametrize("s", [0.5, 1.0 + 0.7j, 2.0 - 1.3j])
    def test_against_trapezoid_quadrature(self, n, s):
        t = np.linspace(0.0, 200.0, 400_001)
        integrand = (1.0 + t) ** n * np.exp(-s * t)
        oracle = np.trapezoid(integrand, t)
        assert polynomial_weight_laplace(n, s) == pytest.approx(oracle, abs=1e-6)

    def test_domain(self):
        with pytest.raises(DomainError):
            polynomial_weight_laplace(2, -1.0)
        with pytest.raises(DomainError):
            polynomial_weight_laplace(-1, 1.0)


class TestMittagLeffler:
    def test_exp_identity(self):
        assert mittag_leffler(1.0, 1.0, 1.0) == pytest.approx(math.e, rel=1e-12)

    def test_at_zero(self):
        assert mittag_leffler(0.5, 1.0, 0.0) == pytest.approx(1.0)

    def test_cosine_identity(self):
        assert mittag_leffler(2.0, 1.0, -1.0) == pytest.approx(math.cos(1.0), rel=1e-12)

    def test_exp_on_disk_grid(self):
        rng = np.random.default_rng(7)
        z = 10.0 * (rng.random(100) * np.exp(2j * math.pi * rng.random(100)))
        got = mittag_leffler_array(1.0, 1.0, z)
        assert np.max(np.abs(got - np.exp(z)) / np.abs(np.exp(z))) < 1e-10

    def test_half_order_against_faddeeva(self):
        worst = 0.0
        for r in [0.3, 1.0, 2.5, 4.0, 7.0, 10.0, 14.0, 16.0, 25.0, 40.0]:
            for th in np.linspace(-math.pi, math.pi, 17):
                z = cmath.rect(r, th)
                ref = ml_half_reference(z)
                if not np.isfinite(abs(ref)) or abs(ref) < 1e-250:
                    continue
                got = mittag_leffler(0.5, 1.0, z)
                worst = max(worst, abs(got - ref) / abs(ref))
        assert worst < 1e-10

    @pytest.mark.parametrize("alpha,beta", [(0.3, 1.0), (0.7, 0.7), (0.9, 1.0), (0.8, 1.8)])
    def test_against_series_oracle(self, alpha, beta):
        # radii capped per order so the oracle's cancellation stays affordable
        rmax = 5.0 if alpha < 0.5 else 11.0
        pts = [
            0.5 + 0.2j,
            -2.0 + 1.0j,
            cmath.rect(4.0, 2.7),
            cmath.rect(rmax, math.pi),
            cmath.rect(4.5, alpha * math.pi / 2),
            cmath.rect(rmax, -2.0),
            cmath.rect(0.8 * rmax, 0.5 + alpha),
        ]
        for z in pts:
            ref = ml_reference(alpha, beta, z)
            got = mittag_leffler(alpha, beta, z)
            assert abs(got - ref) <= 1e-10 * max(abs(ref), 1e-12), (alpha, beta, z)

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.9])
    def test_asymptotic_agrees_with_contour(self, alpha):
        # where the series oracle is unaffordable, the two independent
        # large-argument representations must agree with each other
        import fracspec.special as S

        for r in [16.0, 30.0]:
            for th in [0.6 * math.pi, 0.85 * math.pi, math.pi]:
                z = np.array([cmath.rect(r, th)])
                asym, ok = S._ml_asymptotic_array(alpha, 1.0, z, 1e-11)
                if not ok[0] or not np.isfinite(asym[0]):
                    continue
                cont = S._ml_contour_one(alpha, 1.0, complex(z[0]), 1e-12)
                assert abs(asym[0] - cont) <= 1e-10 * abs(cont), (alpha, r, th)

    def test_large_argument_against_oracle(self):
        # asymptotic regime, mild cancellation: oracle still affordable
        for alpha, beta, z in [
            (0.9, 1.0, -16.0 + 0j),
            (0.9, 0.9, -30.0 + 3j),
            (0.8, 1.0, cmath.rect(20.0, 2.0)),
            (1.0, 2.0, -25.0 + 0j),
            (0.6, 1.6, cmath.rect(18.0, -2.8)),
        ]:
            ref = ml_reference(alpha, beta, z)
            got = mittag_leffler(alpha, beta, z)
            assert abs(got - ref) <= 1e-10 * max(abs(ref), 1e-12), (alpha, beta, z)

    def test_growing_direction(self):
        # positive axis: dominated by the exponential pole term
        for alpha, z in [(0.5, 12.0 + 0j), (0.8, 30.0 + 0j)]:
            ref = ml_reference(alpha, 1.0, z)
            got = mittag_leffler(alpha, 1.0, z)
            assert abs(got - ref) <= 1e-10 * abs(ref)

    @given(
        r=st.floats(0.1, 12.0),
        theta=st.floats(-3.14, 3.14),
    )
    @settings(max_examples=60, deadline=None)
    def test_conjugate_symmetry(self, r, theta):
        z = cmath.rect(r, theta)
        a = mittag_leffler(0.7, 1.0, z).conjugate()
        b = mittag_leffler(0.7, 1.0, z.conjugate())
        assert abs(a - b) <= 1e-10 * max(1.0, abs(a))

    def test_domain(self):
        with pytest.raises(DomainError):
            mittag_leffler(0.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            mittag_leffler(0.5, -1.0, 1.0)
