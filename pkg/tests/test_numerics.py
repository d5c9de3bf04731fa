import math

import numpy as np
import pytest

from prabmix import (
    ConvergenceError,
    DomainError,
    ExponentialDecay,
    NumResult,
    PowerLawDecay,
    QuadSpec,
    integrate,
    integrate_semiinf,
    inverse_laplace,
    laplace_numeric,
    log_gamma,
)

from oracles import loggamma_mp, ml_half


class TestQuadSpec:
    def test_defaults(self):
        spec = QuadSpec()
        assert spec.rel_tol == 1e-10
        assert spec.abs_tol == 1e-12
        assert spec.tail_cutoff_mass == 1e-14
        assert spec.inversion_nodes == 48

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"rel_tol": 0.0},
            {"rel_tol": -1e-3},
            {"abs_tol": -1.0},
            {"max_subdivisions": 0},
            {"inversion_nodes": 4},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(DomainError):
            QuadSpec(**kwargs)


class TestNumResult:
    def test_invariants(self):
        with pytest.raises(DomainError):
            NumResult(1.0, -1.0, 3)
        with pytest.raises(DomainError):
            NumResult(1.0, 0.0, 0)


class TestLogGamma:
    def test_gamma_one(self):
        assert abs(log_gamma(1.0)) < 1e-14

    def test_gamma_five(self):
        assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)

    def test_gamma_half(self):
        assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-13)

    def test_wide_range_against_mpmath(self):
        zs = np.concatenate(
            [np.geomspace(1e-6, 1e6, 160), [0.5, 1.0, 1.5, 2.0, 5.0]]
        )
        for z in zs:
            ref = loggamma_mp(float(z))
            assert abs(log_gamma(float(z)) - ref) <= 1e-14 * max(1.0, abs(ref))

    def test_domain(self):
        with pytest.raises(DomainError):
            log_gamma(0.0)
        with pytest.raises(DomainError):
            log_gamma(-2.5)

    def test_vectorized(self):
        zs = np.array([0.5, 1.0, 5.0])
        out = log_gamma(zs)
        assert out.shape == zs.shape


class TestIntegrate:
    def test_constant(self):
        res = integrate(lambda u: np.ones_like(u), 0.0, 1.0)
        assert res.value == pytest.approx(1.0, abs=1e-12)
        assert res.evaluations > 0

    def test_origin_singularity(self):
        res = integrate(
            lambda u: u**-0.5, 0.0, 1.0, endpoint_singularity=(-0.5, 0.0)
        )
        assert res.value == pytest.approx(2.0, rel=1e-10)

    def test_right_singularity(self):
        res = integrate(
            lambda u: (1.0 - u) ** -0.3, 0.0, 1.0, endpoint_singularity=(0.0, -0.3)
        )
        assert res.value == pytest.approx(1.0 / 0.7, rel=1e-10)

    def test_bad_interval(self):
        with pytest.raises(DomainError):
            integrate(lambda u: u, 1.0, 0.0)

    def test_non_integrable_exponent(self):
        with pytest.raises(DomainError):
            integrate(lambda u: u, 0.0, 1.0, endpoint_singularity=(-1.0, 0.0))

    def test_convergence_error_carries_estimate(self):
        spec = QuadSpec(rel_tol=1e-14, abs_tol=0.0, max_subdivisions=3)
        with pytest.raises(ConvergenceError) as exc_info:
            integrate(lambda u: np.exp(np.sin(17.0 * u)) * np.cos(u), 0.0, 9.0, spec)
        best = exc_info.value.result
        assert isinstance(best, NumResult)
        assert math.isfinite(best.value)

    def test_linearity(self):
        spec = QuadSpec()
        f = lambda u: np.exp(-u) * np.sin(u + 0.3)
        g = lambda u: 1.0 / (1.0 + u**2)
        a, b = 2.5, -1.25
        combo = integrate(lambda u: a * f(u) + b * g(u), 0.0, 3.0, spec).value
        parts = (
            a * integrate(f, 0.0, 3.0, spec).value
            + b * integrate(g, 0.0, 3.0, spec).value
        )
        assert abs(combo - parts) <= 2.0 * spec.rel_tol * max(1.0, abs(combo))


class TestSemiInfinite:
    def test_exponential(self):
        res = integrate_semiinf(
            lambda t: np.exp(-t), decay_hint=ExponentialDecay(1.0)
        )
        assert res.value == pytest.approx(1.0, rel=1e-10)

    def test_gamma_integral(self):
        res = integrate_semiinf(
            lambda t: t * np.exp(-2.0 * t), decay_hint=ExponentialDecay(2.0)
        )
        assert res.value == pytest.approx(0.25, rel=1e-10)

    def test_singular_origin(self):
        res = integrate_semiinf(
            lambda t: t**-0.5 * np.exp(-t),
            decay_hint=ExponentialDecay(1.0),
            origin_exponent=-0.5,
        )
        assert res.value == pytest.approx(math.sqrt(math.pi), rel=1e-10)

    def test_power_law_tail(self):
        res = integrate_semiinf(
            lambda t: (1.0 + t) ** -2.5, decay_hint=PowerLawDecay(-2.5)
        )
        assert res.value == pytest.approx(1.0 / 1.5, rel=1e-8)

    def test_non_integrable_hint(self):
        with pytest.raises(DomainError):
            integrate_semiinf(lambda t: t, decay_hint=PowerLawDecay(-0.5))


class TestLaplaceNumeric:
    def test_constant(self):
        res = laplace_numeric(lambda x: np.ones_like(x), 2.0)
        assert res.value == pytest.approx(0.5, rel=1e-10)

    def test_h_nu_transform(self):
        # transform of the RL kernel h_nu is s**(-nu)
        nu = 0.7
        res = laplace_numeric(
            lambda x: x ** (nu - 1.0) / math.gamma(nu), 1.5, origin_exponent=nu - 1.0
        )
        assert res.value == pytest.approx(1.5**-nu, rel=1e-10)

    @pytest.mark.parametrize("nu", [0.1, 0.3, 0.5, 0.7, 0.9])
    @pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
    def test_h_nu_grid(self, nu, s):
        res = laplace_numeric(
            lambda x: x ** (nu - 1.0) / math.gamma(nu), s, origin_exponent=nu - 1.0
        )
        assert res.value == pytest.approx(s**-nu, rel=1e-9)

    def test_exponential(self):
        res = laplace_numeric(lambda x: np.exp(-x), 1.0)
        assert res.value == pytest.approx(0.5, rel=1e-10)

    def test_domain(self):
        with pytest.raises(DomainError):
            laplace_numeric(lambda x: x, 0.0)


class TestInverseLaplace:
    def test_one_over_s(self):
        assert inverse_laplace(lambda s: 1.0 / s, 3.0) == pytest.approx(1.0, rel=1e-9)

    def test_exponential(self):
        assert inverse_laplace(lambda s: 1.0 / (1.0 + s), 1.0) == pytest.approx(
            math.exp(-1.0), rel=1e-9
        )

    def test_prabhakar_transform(self):
        # s^(alpha*gamma-beta)/(lam+s^alpha)^gamma at alpha=0.5, beta=gamma=lam=1
        # inverts to E_(1/2)(-sqrt(x)); oracle is the scaled complementary erf
        val = inverse_laplace(lambda s: s**-0.5 / (1.0 + s**0.5), 1.0)
        assert val == pytest.approx(ml_half(1.0), rel=1e-9)

    def test_domain(self):
        with pytest.raises(DomainError):
            inverse_laplace(lambda s: 1.0 / s, 0.0)

    def test_round_trip_exp(self, spec):
        def F(s):
            return laplace_numeric(lambda x: np.exp(-x), s, spec).value

        for x in (0.5, 1.0, 2.0):
            assert inverse_laplace(F, x, spec) == pytest.approx(
                math.exp(-x), abs=1e-6
            )

    def test_round_trip_x_exp(self, spec):
        def F(s):
            return laplace_numeric(lambda x: x * np.exp(-x), s, spec).value

        for x in (0.5, 1.5):
            assert inverse_laplace(F, x, spec) == pytest.approx(
                x * math.exp(-x), abs=1e-6
            )

    def test_round_trip_prabhakar_kernel(self, spec):
        from prabmix import PrabhakarTriple
        from prabmix.mlf import _prabhakar_kernel_vec, prabhakar_kernel

        p = PrabhakarTriple(0.7, 1.3, 1.1)
        lam = 0.4

        def F(s):
            return laplace_numeric(
                lambda x: _prabhakar_kernel_vec(p, lam, x),
                s,
                spec,
                origin_exponent=p.beta - 1.0,
            ).value

        x = 1.2
        assert inverse_laplace(F, x, spec) == pytest.approx(
            prabhakar_kernel(p, lam, x), abs=1e-6
        )
