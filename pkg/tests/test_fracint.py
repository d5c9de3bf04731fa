import math

import numpy as np
import pytest

from prabmix import (
    DegenerateLawError,
    DomainError,
    RLKernel,
    StableLaw,
    laplace_numeric,
    inverse_laplace,
    rl_integral,
    rl_stable,
    rl_stable_standard,
    stable_pdf,
)
from prabmix.fracint import _rl_series_vec, _rl_switch, _rl_stable_standard_vec
from prabmix.stable import _stable_pdf_vec

from oracles import levy_pdf


class TestRLKernel:
    def test_weight(self):
        k = RLKernel(1.5)
        assert k.weight(1.0) == pytest.approx(1.0 / math.gamma(1.5), rel=1e-13)

    def test_identity_kernel(self):
        k = RLKernel(0.0)
        assert k.is_identity
        with pytest.raises(DomainError):
            k.weight(1.0)

    def test_negative_order(self):
        with pytest.raises(DomainError):
            RLKernel(-0.1)


class TestRLIntegral:
    def test_identity_order(self):
        res = rl_integral(lambda u: np.sin(u), 0.0, 1.3)
        assert res.value == math.sin(1.3)
        assert res.evaluations == 1

    def test_semigroup_on_kernels(self):
        # I^0.9 applied to h_0.6 gives h_1.5
        h06 = lambda u: np.where(u > 0, u**-0.4, 0.0) / math.gamma(0.6)
        res = rl_integral(h06, 0.9, 1.0, f_origin_exponent=-0.4)
        assert res.value == pytest.approx(1.0 / math.gamma(1.5), rel=1e-9)

    def test_constant(self):
        # I^nu[1](x) = x^nu / Gamma(nu+1)
        res = rl_integral(lambda u: np.ones_like(u), 0.5, 4.0)
        assert res.value == pytest.approx(2.0 / math.gamma(1.5), rel=1e-10)

    def test_negative_order_rejected(self):
        with pytest.raises(DomainError):
            rl_integral(lambda u: u, -0.5, 1.0)

    @pytest.mark.parametrize("nu1", [0.3, 0.7])
    @pytest.mark.parametrize("nu2", [0.3, 0.7])
    def test_semigroup_smooth(self, nu1, nu2, spec):
        f = lambda u: np.exp(-u)

        def inner(us):
            return np.array(
                [
                    rl_integral(f, nu1, float(u), spec).value if u > 0 else 0.0
                    for u in np.atleast_1d(us)
                ]
            )

        nested = rl_integral(inner, nu2, 1.0, spec).value
        direct = rl_integral(f, nu1 + nu2, 1.0, spec).value
        assert abs(nested - direct) < 1e-6


class TestRLStableStandard:
    def test_order_zero_is_density(self):
        res = rl_stable_standard(0.5, 0.0, 1.0)
        assert res.value == pytest.approx(float(levy_pdf(1.0)), rel=1e-12)

    def test_half_order_vs_inversion(self, spec):
        # Laplace-domain oracle: transform is s^(-nu) exp(-s^alpha)
        ref = inverse_laplace(
            lambda s: s**-0.5 * np.exp(-(s**0.5)), 1.0, spec
        )
        res = rl_stable_standard(0.5, 0.5, 1.0, spec)
        assert res.value == pytest.approx(ref, rel=1e-9)

    def test_order_one_total_mass(self):
        # I^1 is the CDF; tail deficit decays like x^(-alpha)/Gamma(1-alpha)
        val = rl_stable_standard(0.5, 1.0, 1e10).value
        assert val == pytest.approx(1.0, abs=1e-4)
        assert rl_stable_standard(0.5, 1.0, 1e14).value == pytest.approx(
            1.0, abs=1e-6
        )

    def test_nonnegative(self):
        for nu in (0.2, 0.8, 1.4):
            for x in (0.05, 0.5, 2.0, 50.0):
                assert rl_stable_standard(0.6, nu, x).value >= 0.0

    @pytest.mark.parametrize(
        "alpha,nu", [(0.3, 0.4), (0.5, 0.5), (0.7, 1.1), (0.9, 0.35)]
    )
    def test_series_quadrature_overlap(self, alpha, nu, spec):
        ysw = _rl_switch(alpha, nu)
        ys = np.linspace(0.9 * ysw, 1.25 * ysw, 7)
        series = _rl_series_vec(alpha, nu, ys)
        quad = np.array(
            [
                rl_integral(
                    lambda u: _stable_pdf_vec(alpha, u, spec), nu, float(y), spec
                ).value
                for y in ys
            ]
        )
        assert np.max(np.abs(series - quad) / np.abs(series)) < 1e-9


class TestRLStable:
    def test_alpha_one_closed_form(self):
        res = rl_stable(1.0, 0.5, 1.0, 2.0)
        assert res.value == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-13)

    def test_alpha_one_support(self):
        assert rl_stable(1.0, 0.5, 3.0, 2.0).value == 0.0

    def test_alpha_one_nu_zero_refused(self):
        with pytest.raises(DegenerateLawError):
            rl_stable(1.0, 0.0, 1.0, 2.0)

    def test_scaling_reduction(self):
        # t = 1 reduces to the standard evaluation
        a = rl_stable(0.5, 0.3, 1.0, 1.0).value
        b = rl_stable_standard(0.5, 0.3, 1.0).value
        assert a == b

    def test_scaling_application(self):
        # direct application of the scaling identity
        v = rl_stable(0.5, 0.3, 2.0, 1.0).value
        ref = 2.0 ** ((0.3 - 1.0) / 0.5) * rl_stable_standard(
            0.5, 0.3, 1.0 * 2.0 ** (-1.0 / 0.5)
        ).value
        assert v == pytest.approx(ref, rel=1e-14)

    @pytest.mark.parametrize("alpha", [0.4, 0.7])
    @pytest.mark.parametrize("nu", [0.4, 1.1])
    @pytest.mark.parametrize("t", [0.5, 2.0])
    def test_prop1_identity_direct_quadrature(self, alpha, nu, t, spec):
        # integrate the conditional density directly (scaling inside the
        # integrand) and compare with the scaled standard form
        x = 1.0
        scale = t ** (-1.0 / alpha)

        def conditional(us):
            return _stable_pdf_vec(alpha, np.asarray(us) * scale, spec) * scale

        direct = rl_integral(conditional, nu, x, spec).value
        scaled = rl_stable(alpha, nu, t, x, spec).value
        assert abs(direct - scaled) < 1e-7

    @pytest.mark.parametrize(
        "alpha,nu,t", [(0.5, 0.5, 1.0), (0.7, 0.3, 2.0), (0.3, 1.2, 0.5)]
    )
    @pytest.mark.parametrize("s", [0.5, 1.5])
    def test_laplace_transform(self, alpha, nu, t, s, spec):
        def f(xs):
            scale = t ** (-1.0 / alpha)
            return t ** ((nu - 1.0) / alpha) * _rl_stable_standard_vec(
                alpha, nu, np.asarray(xs) * scale, spec
            )

        res = laplace_numeric(f, s, spec, origin_exponent=None)
        ref = s**-nu * math.exp(-t * s**alpha)
        assert abs(res.value - ref) < 1e-6

    @pytest.mark.parametrize(
        "alpha,t,x", [(0.5, 1.0, 1.0), (0.8, 2.0, 0.5), (0.4, 0.7, 1.5)]
    )
    def test_prop2_nu_one_minus_alpha(self, alpha, t, x, spec):
        lhs = alpha * rl_stable(alpha, 1.0 - alpha, t, x, spec).value * t
        rhs = x * stable_pdf(StableLaw(alpha, t), x, spec)
        assert abs(lhs - rhs) < 1e-7
