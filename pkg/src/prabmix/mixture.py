"""Gamma-weighted mixtures of fractional integrals of stable densities.

The central identity: with composite parameters nu = beta - alpha*gamma and
mu = gamma + theta/alpha, the mixture

    M^nu_(alpha,mu)(x|lam) = (1/Gamma(mu)) Integral_0^inf
        {I^nu f_alpha(.|t)}(x) t**(mu-1) exp(-lam t) dt

equals the Prabhakar kernel x**(beta+theta-1) E^(gamma+theta/alpha)_
(alpha,beta+theta)(-lam x**alpha).

Evaluation substitutes y = x t**(-1/alpha) so the standard-density argument
sweeps a fixed grid independent of lam and x:

    M = (alpha x**(bt-1) / Gamma(mu)) Integral_0^inf
        {I^nu f_alpha}(y) y**(-bt) exp(-lam x**alpha y**(-alpha)) dy

with bt = alpha*mu + nu (= beta + theta).  {I^nu f_alpha} values come from a
caller-reusable log-log spline table below the series switch point and the
tail series above it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ConvergenceError, DegenerateLawError, DomainError
from .fracint import (
    _rl_series_vec,
    _rl_switch,
    _rl_stable_standard_vec,
    rl_integral,
    rl_stable_standard,
)
from .mlf import PrabhakarTriple
from .numerics import (
    DEFAULT_SPEC,
    NumResult,
    PowerLawDecay,
    QuadSpec,
    integrate,
    integrate_semiinf,
    log_gamma,
)
from .stable import StableLaw, _stable_pdf_vec, stable_pdf

__all__ = [
    "GammaWeight",
    "BaseParams",
    "MixtureParams",
    "base_to_composite",
    "RlStableTable",
    "mixture_eval",
    "mixture_eval_special",
    "theta_shift_residual",
]

_BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class GammaWeight:
    """Unnormalised gamma weight t**(mu-1) exp(-lam t) / Gamma(mu).

    The usual lam**mu normaliser is omitted so lam = 0 is admissible; the
    total mass is lam**(-mu) for lam > 0 (not 1 unless lam = 1).
    """

    mu: float
    lam: float = 0.0

    def __post_init__(self):
        if not self.mu > 0.0:
            raise DomainError("gamma shape mu must be positive")
        if self.lam < 0.0:
            raise DomainError("gamma rate lambda must be nonnegative")

    def total_mass(self) -> float:
        if self.lam == 0.0:
            return math.inf
        return self.lam ** (-self.mu)

    def density(self, t):
        ts = np.asarray(t, dtype=float)
        if np.any(ts <= 0.0):
            raise DomainError("gamma weight requires t > 0")
        out = np.exp(
            (self.mu - 1.0) * np.log(ts) - self.lam * ts - log_gamma(self.mu)
        )
        return float(out) if np.ndim(t) == 0 else out


@dataclass(frozen=True)
class BaseParams:
    """Four base parameters (alpha, beta, gamma, theta) of the construction.

    Validity range: 0 < alpha <= 1, beta >= alpha*gamma (so nu >= 0) and
    theta > -alpha*gamma (so mu > 0).
    """

    alpha: float
    beta: float
    gamma: float
    theta: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError("alpha must lie in (0, 1]")
        if not self.gamma > 0.0:
            raise DomainError("gamma must be positive")
        if self.beta < self.alpha * self.gamma - _BOUNDARY_TOL:
            raise DomainError(
                "beta must be at least alpha*gamma (nonnegative order nu)"
            )
        if self.theta <= -self.alpha * self.gamma:
            raise DomainError("theta must exceed -alpha*gamma")

    @property
    def nu(self) -> float:
        return max(self.beta - self.alpha * self.gamma, 0.0)

    @property
    def mu(self) -> float:
        return self.gamma + self.theta / self.alpha

    @property
    def beta_theta(self) -> float:
        return self.beta + self.theta

    def prabhakar_triple(self) -> PrabhakarTriple:
        """Series parameters (alpha, beta+theta, gamma+theta/alpha) of Theorem 1."""
        return PrabhakarTriple(self.alpha, self.beta + self.theta, self.mu)


@dataclass(frozen=True)
class MixtureParams:
    """Composite parameters (alpha, nu, mu) driving the mixture integral."""

    alpha: float
    nu: float
    mu: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError("alpha must lie in (0, 1]")
        if self.nu < 0.0:
            raise DomainError("order nu must be nonnegative")
        if not self.mu > 0.0:
            raise DomainError("gamma shape mu must be positive")


def base_to_composite(b: BaseParams) -> MixtureParams:
    """Map base (alpha, beta, gamma, theta) to composite (alpha, nu, mu)."""
    return MixtureParams(b.alpha, b.nu, b.mu)


class RlStableTable:
    """Reusable interpolation table of {I^nu f_alpha}(y) on the quadrature side.

    Uniform grid in ln y below the series switch point, cubic spline of
    ln value against ln y; the series handles y above the switch and y below
    the underflow floor evaluates to 0.  Immutable after construction, so a
    single table may be shared across mixture evaluations at different
    (lam, x, mu); by default `mixture_eval` builds a private one per call.
    """

    def __init__(
        self,
        alpha: float,
        nu: float,
        spec: QuadSpec = DEFAULT_SPEC,
        n_nodes: int = 1537,
        n_check: int = 12,
    ):
        if not 0.0 < alpha < 1.0:
            raise DomainError("RlStableTable requires 0 < alpha < 1")
        if nu < 0.0:
            raise DomainError("order nu must be nonnegative")
        self.alpha = alpha
        self.nu = nu
        self.y_hi = _rl_switch(alpha, nu) if nu > 0.0 else _switch_for_pdf(alpha)
        w_hi = math.log(self.y_hi)
        # lower bound: where exp(-a(0) y^(-alpha/(1-alpha))) underflows, so
        # the nodes concentrate on the live support (vital for alpha near 1,
        # whose support above underflow spans only a couple of ln units)
        r = alpha / (1.0 - alpha)
        ln_a0 = math.log(1.0 - alpha) + r * math.log(alpha)
        w_lo = (ln_a0 - math.log(700.0)) / r - 1.0
        w_lo = max(min(w_lo, w_hi - 2.0), w_hi - 140.0)
        w = np.linspace(w_lo, w_hi, n_nodes)
        ys = np.exp(w)
        vals = _rl_stable_standard_vec(alpha, nu, ys, spec)
        pos = vals > 0.0
        if not pos.any():
            raise ConvergenceError("RL-of-stable table found no positive values")
        first = int(np.argmax(pos))
        if not pos[first:].all():
            # keep only the contiguous positive block reaching the switch
            first = int(len(pos) - np.argmin(pos[::-1]))
        self._w0 = w[first]
        ln_vals = np.log(vals[first:])
        self._spline = CubicSpline(w[first:], ln_vals)
        self.evaluations = int(ys.size)

        # verify interpolation where the values are numerically significant;
        # integrals against the table need absolute accuracy relative to the
        # peak, so the comparison denominator is floored at 1e-4 of the peak
        # (pointwise quadrature noise at tiny values is not a table defect)
        rng = np.random.default_rng(0)
        v_max = float(np.exp(ln_vals.max()))
        significant = w[first:][ln_vals >= ln_vals.max() - 25.0]
        w_chk_lo = float(significant[0])
        y_chk = np.exp(rng.uniform(w_chk_lo, w_hi, size=n_check))
        direct = _rl_stable_standard_vec(alpha, nu, y_chk, spec)
        approx = self.eval(y_chk)
        self.check_error = float(
            np.max(np.abs(approx - direct) / (np.abs(direct) + 1e-4 * v_max))
        )
        if self.check_error > 1e-7:
            raise ConvergenceError(
                f"RL-of-stable table interpolation check failed "
                f"({self.check_error:.2e} scaled)"
            )

    def eval(self, ys) -> np.ndarray:
        ys = np.asarray(ys, dtype=float)
        out = np.zeros_like(ys)
        pos = ys > 0.0
        w = np.log(np.where(pos, ys, 1.0))
        mid = pos & (w >= self._w0) & (ys < self.y_hi)
        hi = pos & (ys >= self.y_hi)
        if mid.any():
            out[mid] = np.exp(self._spline(w[mid]))
        if hi.any():
            if self.nu > 0.0:
                out[hi] = np.maximum(_rl_series_vec(self.alpha, self.nu, ys[hi]), 0.0)
            else:
                out[hi] = _stable_pdf_vec(self.alpha, ys[hi])
        return out


def _switch_for_pdf(alpha: float) -> float:
    from .stable import _get_alpha_cache

    return _get_alpha_cache(alpha)["x_switch"]


def _tail_exponent(alpha: float, nu: float, mu: float, extra: float = 0.0) -> float:
    # integrand ~ y**(nu-1-bt) for nu > 0, ~ y**(-alpha-1-bt) for nu = 0
    bt = alpha * mu + nu
    if nu > 0.0:
        return nu - 1.0 - bt + extra
    return -alpha - 1.0 - bt + extra


def _mixture_alpha1(m: MixtureParams, lam: float, x: float, spec: QuadSpec) -> NumResult:
    """alpha = 1 dispatch: delta-law closed forms (kernel h_nu in t)."""
    nu, mu = m.nu, m.mu
    if nu == 0.0:
        val = math.exp((mu - 1.0) * math.log(x) - lam * x - log_gamma(mu))
        return NumResult(val, 1e-15 * val, 1)
    pref = math.exp(-log_gamma(mu) - log_gamma(nu))

    def integrand(ts):
        return np.exp(
            (nu - 1.0) * np.log(np.maximum(x - ts, 1e-300))
            + (mu - 1.0) * np.log(np.maximum(ts, 1e-300))
            - lam * ts
        )

    res = integrate(
        integrand, 0.0, x, spec, endpoint_singularity=(mu - 1.0, nu - 1.0)
    )
    return NumResult(
        max(pref * res.value, 0.0), pref * res.err_estimate, res.evaluations
    )


def mixture_eval(
    m: MixtureParams,
    lam: float,
    x: float,
    spec: QuadSpec = DEFAULT_SPEC,
    table: RlStableTable | None = None,
) -> NumResult:
    """M^nu_(alpha,mu)(x|lam), the gamma mixture of RL-integrated stable densities.

    Pass a prebuilt ``table`` (matching alpha and nu) to reuse the RL values
    across sweeps in lam, x, or mu; otherwise a per-call table is built.
    """
    if not x > 0.0:
        raise DomainError("mixture_eval requires x > 0")
    if lam < 0.0:
        raise DomainError("mixture rate lambda must be nonnegative")
    alpha, nu, mu = m.alpha, m.nu, m.mu
    if alpha == 1.0:
        return _mixture_alpha1(m, lam, x, spec)

    build_evals = 0
    if nu == 0.0:
        rl_vals = lambda ys: _stable_pdf_vec(alpha, ys, spec)
    else:
        if table is None:
            table = RlStableTable(alpha, nu, spec)
            build_evals = table.evaluations
        elif table.alpha != alpha or table.nu != nu:
            raise DomainError("table parameters do not match mixture parameters")
        rl_vals = table.eval

    bt = alpha * mu + nu
    ln_pref = math.log(alpha) + (bt - 1.0) * math.log(x) - log_gamma(mu)
    pref = math.exp(ln_pref)
    lam_xa = lam * x**alpha

    def integrand(ys):
        ys = np.asarray(ys, dtype=float)
        T = rl_vals(ys)
        out = np.zeros_like(ys)
        mpos = T > 0.0
        if mpos.any():
            y = ys[mpos]
            expo = -bt * np.log(y) - lam_xa * y ** (-alpha)
            out[mpos] = T[mpos] * np.exp(np.maximum(expo, -745.0))
        return out

    res = integrate_semiinf(
        integrand, spec, PowerLawDecay(_tail_exponent(alpha, nu, mu))
    )
    return NumResult(
        max(pref * res.value, 0.0),
        pref * res.err_estimate,
        res.evaluations + build_evals,
    )


def mixture_eval_special(
    b: BaseParams, lam: float, x: float, spec: QuadSpec = DEFAULT_SPEC
) -> NumResult:
    """Single-integral fast paths for nu = 0 and nu = 1 - alpha.

    Both variants integrate the plain stable density (no RL order inside),
    so the integrand is a fast vectorized hybrid with no table.
    """
    if not x > 0.0:
        raise DomainError("mixture_eval_special requires x > 0")
    if lam < 0.0:
        raise DomainError("mixture rate lambda must be nonnegative")
    alpha, nu, mu = b.alpha, b.nu, b.mu
    variant_a = abs(nu) <= _BOUNDARY_TOL
    variant_b = abs(nu - (1.0 - alpha)) <= _BOUNDARY_TOL
    if not (variant_a or variant_b):
        raise DomainError(
            "neither special case applies: need beta - alpha*gamma = 0 "
            "or = 1 - alpha"
        )
    if alpha == 1.0:
        # both variants collapse to nu = 0, the delta closed form
        return _mixture_alpha1(MixtureParams(1.0, 0.0, mu), lam, x, spec)

    bt = b.beta_theta
    lam_xa = lam * x**alpha
    if variant_a:
        ln_pref = math.log(alpha) + (bt - 1.0) * math.log(x) - log_gamma(mu)
        y_pow = -bt
        tail = -alpha - 1.0 - bt
    else:
        ln_pref = (bt - 1.0) * math.log(x) - log_gamma(mu)
        y_pow = 1.0 - bt
        tail = -alpha - bt
    pref = math.exp(ln_pref)

    def integrand(ys):
        ys = np.asarray(ys, dtype=float)
        f = _stable_pdf_vec(alpha, ys, spec)
        out = np.zeros_like(ys)
        mpos = f > 0.0
        if mpos.any():
            y = ys[mpos]
            expo = y_pow * np.log(y) - lam_xa * y ** (-alpha)
            out[mpos] = f[mpos] * np.exp(np.maximum(expo, -745.0))
        return out

    res = integrate_semiinf(integrand, spec, PowerLawDecay(tail))
    return NumResult(
        max(pref * res.value, 0.0), pref * res.err_estimate, res.evaluations
    )


def theta_shift_residual(
    b: BaseParams,
    theta2: float,
    t: float,
    x: float,
    spec: QuadSpec = DEFAULT_SPEC,
) -> float:
    """Residual of the theta-shifted scaling identity, evaluated at theta2.

    Computes t**(gamma+theta2/alpha) {I^nu f_alpha(.|t)}(x) (direct quadrature
    of the conditional density, scaling inside the integrand) minus
    t**((beta+theta2-1)/alpha) {I^nu f_alpha}(x t**(-1/alpha)); the identity
    makes this vanish for every admissible theta2.
    """
    if not t > 0.0 or not x > 0.0:
        raise DomainError("theta_shift_residual requires t > 0 and x > 0")
    alpha = b.alpha
    if alpha == 1.0:
        raise DomainError("theta shift residual is defined for alpha < 1")
    if theta2 <= -alpha * b.gamma:
        raise DomainError("theta must exceed -alpha*gamma")
    nu = b.nu
    law = StableLaw(alpha, t)
    scale = t ** (-1.0 / alpha)

    def conditional_pdf(us):
        return _stable_pdf_vec(alpha, np.asarray(us) * scale, spec) * scale

    if nu == 0.0:
        direct = float(conditional_pdf(np.array([x]))[0])
    else:
        direct = rl_integral(conditional_pdf, nu, x, spec).value
    lhs = t ** (b.gamma + theta2 / alpha) * direct
    rhs = t ** ((b.beta + theta2 - 1.0) / alpha) * rl_stable_standard(
        alpha, nu, x * scale, spec
    ).value
    return lhs - rhs
