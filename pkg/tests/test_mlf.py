import math

import numpy as np
import pytest

from prabmix import (
    DomainError,
    PrabhakarTriple,
    RouteError,
    laplace_numeric,
    ml1,
    prabhakar_kernel,
    prabhakar_laplace_closed,
    prabhakar_series,
    prabhakar_via_inversion,
)
from prabmix.mlf import _prabhakar_kernel_vec

from oracles import ml_brute, ml_half, prabhakar_brute


class TestTriple:
    def test_validation(self):
        with pytest.raises(DomainError):
            PrabhakarTriple(-0.1, 1.0, 1.0)
        with pytest.raises(DomainError):
            PrabhakarTriple(0.5, 0.0, 1.0)
        with pytest.raises(DomainError):
            PrabhakarTriple(0.5, 1.0, -1.0)


class TestMl1:
    def test_at_zero(self):
        assert ml1(0.7, 0.0) == 1.0

    def test_exponential(self):
        assert ml1(1.0, -2.0) == pytest.approx(math.exp(-2.0), rel=1e-13)

    def test_half_vs_inversion_oracle(self, spec):
        # cross-check against numeric inversion of s^(alpha-1)/(lam+s^alpha)
        from prabmix import inverse_laplace

        ref = inverse_laplace(lambda s: s**-0.5 / (1.0 + s**0.5), 1.0, spec)
        assert ml1(0.5, -1.0) == pytest.approx(ref, rel=1e-9)

    def test_half_closed_form(self):
        for z in (0.3, 1.0, 2.0, 4.0):
            assert ml1(0.5, -z) == pytest.approx(ml_half(z), rel=1e-8)

    def test_refuses_beyond_z_max(self):
        with pytest.raises(RouteError):
            ml1(0.5, -31.0)

    def test_refuses_catastrophic_cancellation(self):
        # within |z| <= 30 but hopeless in double precision at small alpha
        with pytest.raises(RouteError):
            ml1(0.3, -8.0)

    def test_alpha_zero_geometric(self):
        assert ml1(0.0, -0.5) == pytest.approx(1.0 / 1.5, rel=1e-12)
        with pytest.raises(RouteError):
            ml1(0.0, -1.5)


class TestPrabhakarSeries:
    def test_at_zero(self):
        p = PrabhakarTriple(0.6, 1.2, 0.8)
        assert prabhakar_series(p, 0.0) == pytest.approx(
            1.0 / math.gamma(1.2), rel=1e-14
        )

    def test_reduction_to_ml1(self):
        for alpha, z in [(0.6, -1.5), (0.9, -4.0), (1.0, -2.0)]:
            p = PrabhakarTriple(alpha, 1.0, 1.0)
            assert prabhakar_series(p, z) == pytest.approx(
                ml1(alpha, z), rel=1e-14, abs=1e-16
            )

    @pytest.mark.parametrize(
        "alpha,beta,gamma,z",
        [
            (0.6, 1.2, 0.8, -1.5),
            (0.9, 1.5, 1.1, -7.0),
            (1.0, 2.0, 1.0, -8.0),
            (0.7, 1.0, 2.5, -3.0),
            (0.5, 2.2, 0.6, 1.5),
        ],
    )
    def test_against_brute_force(self, alpha, beta, gamma, z):
        mine = prabhakar_series(PrabhakarTriple(alpha, beta, gamma), z)
        ref = prabhakar_brute(alpha, beta, gamma, z)
        assert mine == pytest.approx(ref, rel=2e-8)

    def test_monotone_decrease_in_lambda(self):
        # Corollary-1 range parameters: evaluations nonincreasing in lambda
        p = PrabhakarTriple(0.7, 1.4, 1.2)
        lams = np.linspace(0.0, 6.0, 20)
        vals = [prabhakar_series(p, -float(l)) for l in lams]
        assert np.all(np.diff(vals) <= 0)


class TestKernel:
    def test_lam_zero(self):
        p = PrabhakarTriple(0.6, 1.4, 0.9)
        assert prabhakar_kernel(p, 0.0, 2.0) == pytest.approx(
            2.0**0.4 / math.gamma(1.4), rel=1e-13
        )

    def test_reduces_to_ml1(self):
        p = PrabhakarTriple(0.5, 1.0, 1.0)
        assert prabhakar_kernel(p, 1.0, 1.0) == pytest.approx(
            ml1(0.5, -1.0), rel=1e-14
        )

    def test_kernel_laplace_example(self, spec):
        p = PrabhakarTriple(0.7, 1.5, 1.1)
        res = laplace_numeric(
            lambda x: _prabhakar_kernel_vec(p, 2.0, x),
            1.0,
            spec,
            origin_exponent=0.5,
        )
        assert res.value == pytest.approx(3.0**-1.1, rel=1e-8)

    @pytest.mark.parametrize(
        "alpha,beta,gamma,lam,s",
        [
            (0.7, 1.5, 1.1, 0.4, 2.0),
            (0.9, 0.9, 0.7, 0.3, 2.5),
            (0.6, 2.0, 1.4, 0.5, 3.0),
        ],
    )
    def test_laplace_consistency_grid(self, alpha, beta, gamma, lam, s, spec):
        p = PrabhakarTriple(alpha, beta, gamma)
        res = laplace_numeric(
            lambda x: _prabhakar_kernel_vec(p, lam, x),
            s,
            spec,
            origin_exponent=beta - 1.0,
        )
        assert abs(res.value - prabhakar_laplace_closed(p, lam, s)) < 1e-6


class TestClosedForm:
    def test_one_parameter_case(self):
        # gamma = beta = 1 collapses to s^(alpha-1)/(lam+s^alpha)
        p = PrabhakarTriple(0.6, 1.0, 1.0)
        s = 1.7
        assert prabhakar_laplace_closed(p, 0.8, s) == pytest.approx(
            s ** (0.6 - 1.0) / (0.8 + s**0.6), rel=1e-14
        )

    def test_lam_zero(self):
        p = PrabhakarTriple(0.6, 1.3, 0.9)
        assert prabhakar_laplace_closed(p, 0.0, 2.0) == pytest.approx(
            2.0**-1.3, rel=1e-14
        )

    def test_log_domain_arithmetic(self):
        p = PrabhakarTriple(0.5, 1.2, 0.9)
        assert prabhakar_laplace_closed(p, 1.0, 2.0) == pytest.approx(
            2.0**-0.75 / (1.0 + 2.0**0.5) ** 0.9, rel=1e-14
        )

    def test_s_nonpositive_rejected(self):
        p = PrabhakarTriple(0.5, 1.2, 0.9)
        with pytest.raises(DomainError):
            prabhakar_laplace_closed(p, 1.0, 0.0)
        with pytest.raises(DomainError):
            prabhakar_laplace_closed(p, 1.0, -1.0)


class TestInversionRoute:
    def test_exponential_case(self, spec):
        p = PrabhakarTriple(1.0, 1.0, 1.0)
        assert prabhakar_via_inversion(p, 1.0, 2.0, spec) == pytest.approx(
            math.exp(-2.0), rel=1e-10
        )

    def test_half_case(self, spec):
        p = PrabhakarTriple(0.5, 1.0, 1.0)
        assert prabhakar_via_inversion(p, 1.0, 1.0, spec) == pytest.approx(
            ml1(0.5, -1.0), abs=1e-8
        )

    def test_three_parameter_case(self, spec):
        p = PrabhakarTriple(0.6, 1.4, 1.3)
        assert prabhakar_via_inversion(p, 0.5, 1.7, spec) == pytest.approx(
            prabhakar_kernel(p, 0.5, 1.7), abs=1e-7
        )

    def test_brute_force_agreement(self, spec):
        p = PrabhakarTriple(0.8, 1.1, 0.9)
        x, lam = 1.3, 0.7
        ref = x ** (p.beta - 1.0) * prabhakar_brute(
            p.alpha, p.beta, p.gamma, -lam * x**p.alpha
        )
        assert prabhakar_via_inversion(p, lam, x, spec) == pytest.approx(
            ref, rel=1e-9
        )


class TestThreeRouteAgreement:
    @pytest.mark.parametrize(
        "alpha,beta,gamma,lam,x",
        [
            (0.7, 1.0, 1.0, 1.0, 1.0),
            (0.8, 1.4, 1.2, 0.5, 1.7),
            (0.6, 1.2, 0.8, 1.5, 0.6),
        ],
    )
    def test_series_vs_inversion_vs_mixture(self, alpha, beta, gamma, lam, x, spec, tables):
        from prabmix import MixtureParams, mixture_eval

        p = PrabhakarTriple(alpha, beta, gamma)
        ser = prabhakar_kernel(p, lam, x)
        inv = prabhakar_via_inversion(p, lam, x, spec)
        nu = beta - alpha * gamma
        mix = mixture_eval(
            MixtureParams(alpha, nu, gamma), lam, x, spec,
            table=tables.get(alpha, nu),
        ).value
        assert abs(ser - inv) < 1e-6 * (1.0 + abs(ser))
        assert abs(ser - mix) < 1e-6 * (1.0 + abs(ser))
