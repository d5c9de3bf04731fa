"""Distribution surface of the mixture construction.

The four-parameter law on t > 0 with unnormalised density

    dQ(t) = (1/Gamma(mu)) {I^nu f_alpha(.|t)}(1) t**(mu-1) dt,
    nu = beta - alpha*gamma,  mu = gamma + theta/alpha,

has total mass 1/Gamma(beta+theta); P = Gamma(beta+theta) Q is a probability
law whose Laplace transform is Gamma(beta+theta) E^mu_(alpha,beta+theta)(-lam).
Special cases: the classical Pollard law (beta=gamma=1, theta=0), the
generalised Mittag-Leffler law (beta=gamma=1), and Beta(gamma+theta,
beta-gamma) at alpha=1.  A finite-difference complete-monotonicity checker
provides a numeric necessary-condition test (never a proof).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import PchipInterpolator

from .errors import (
    ConsistencyError,
    DegenerateLawError,
    DomainError,
    RouteError,
    SamplingError,
)
from .fracint import _rl_stable_standard_vec
from .mixture import BaseParams, MixtureParams, RlStableTable, mixture_eval
from .mlf import PrabhakarTriple, prabhakar_series
from .numerics import (
    DEFAULT_SPEC,
    ExponentialDecay,
    NumResult,
    QuadSpec,
    integrate_semiinf,
    log_gamma,
)
from .stable import StableLaw, _stable_pdf_vec, stable_cdf, stable_sample_many

__all__ = [
    "MixtureLawR",
    "PollardLaw",
    "q_density",
    "p_density",
    "p_moment",
    "p_tilted_laplace",
    "pollard_cdf",
    "gml_density",
    "p_sample",
    "InverseCdfSampler",
    "CmReport",
    "cm_check",
]

_BOUNDARY_TOL = 1e-12


# ---------------------------------------------------------------------------
# densities


def _q_density_vec(
    b: BaseParams,
    ts: np.ndarray,
    spec: QuadSpec = DEFAULT_SPEC,
    table: RlStableTable | None = None,
) -> np.ndarray:
    """Vectorized unnormalised density of Q at t > 0 (0 elsewhere)."""
    ts = np.asarray(ts, dtype=float)
    alpha, nu, mu = b.alpha, b.nu, b.mu
    out = np.zeros_like(ts)
    pos = ts > 0.0
    if not pos.any():
        return out
    t = ts[pos]

    if alpha == 1.0:
        if nu == 0.0:
            raise DegenerateLawError(
                "alpha = 1 with beta = gamma concentrates Q at t = 1; "
                "no pointwise density exists"
            )
        inside = t < 1.0
        vals = np.zeros_like(t)
        tt = t[inside]
        vals[inside] = np.exp(
            (nu - 1.0) * np.log1p(-tt)
            + (mu - 1.0) * np.log(tt)
            - log_gamma(nu)
            - log_gamma(mu)
        )
        out[pos] = vals
        return out

    y = t ** (-1.0 / alpha)
    bt = b.beta_theta
    if abs(nu) <= _BOUNDARY_TOL:
        vals = (
            _stable_pdf_vec(alpha, y, spec)
            * np.exp(((bt - 1.0) / alpha - 1.0) * np.log(t) - log_gamma(mu))
        )
    elif abs(nu - (1.0 - alpha)) <= _BOUNDARY_TOL:
        vals = (
            _stable_pdf_vec(alpha, y, spec)
            / alpha
            * np.exp(((bt - 2.0) / alpha - 1.0) * np.log(t) - log_gamma(mu))
        )
    else:
        rl = table.eval(y) if table is not None else _rl_stable_standard_vec(
            alpha, nu, y, spec
        )
        vals = rl * np.exp(((bt - 1.0) / alpha - 1.0) * np.log(t) - log_gamma(mu))
    out[pos] = vals
    return out


def q_density(
    b: BaseParams,
    t: float,
    spec: QuadSpec = DEFAULT_SPEC,
    table: RlStableTable | None = None,
) -> float:
    """Unnormalised four-parameter density; integrates to 1/Gamma(beta+theta)."""
    if not t > 0.0:
        raise DomainError("q_density requires t > 0")
    return float(_q_density_vec(b, np.array([t]), spec, table)[0])


def p_density(
    b: BaseParams,
    t: float,
    spec: QuadSpec = DEFAULT_SPEC,
    table: RlStableTable | None = None,
) -> float:
    """Probability density Gamma(beta+theta) * q_density; integrates to 1."""
    return math.exp(log_gamma(b.beta_theta)) * q_density(b, t, spec, table)


def _p_density_vec(b, ts, spec=DEFAULT_SPEC, table=None):
    return math.exp(log_gamma(b.beta_theta)) * _q_density_vec(b, ts, spec, table)


def p_moment(b: BaseParams, n: float) -> float:
    """n-th moment of P: Gamma(bt) Gamma(mu+n) / (Gamma(mu) Gamma(beta+alpha n+theta))."""
    if n < 0:
        raise DomainError("moment order must be nonnegative")
    return math.exp(
        log_gamma(b.beta_theta)
        + log_gamma(b.mu + n)
        - log_gamma(b.mu)
        - log_gamma(b.beta + b.alpha * n + b.theta)
    )


def _prabhakar_value(
    triple: PrabhakarTriple, lam: float, m: MixtureParams, spec: QuadSpec
) -> float:
    """E-function value at -lam by series, falling back to the mixture route."""
    try:
        return prabhakar_series(triple, -lam)
    except RouteError:
        return mixture_eval(m, lam, 1.0, spec).value


def p_tilted_laplace(
    b: BaseParams, q: float, lam: float, spec: QuadSpec = DEFAULT_SPEC
) -> float:
    """Tilted transform of P: integral of exp(-lam t) t**q dP(t).

    Returns the closed form
    Gamma(bt) Gamma(mu+q)/Gamma(mu) * E^(mu+q)_(alpha, beta+alpha q+theta)(-lam)
    after asserting agreement with the direct numeric integral within
    1e-6 * (1 + value).
    """
    if lam < 0.0:
        raise DomainError("lambda must be nonnegative")
    if q <= -b.mu:
        raise DomainError("tilt exponent q must exceed -gamma - theta/alpha")
    alpha, mu, nu = b.alpha, b.mu, b.nu
    triple = PrabhakarTriple(alpha, b.beta + alpha * q + b.theta, mu + q)
    analytic = math.exp(
        log_gamma(b.beta_theta) + log_gamma(mu + q) - log_gamma(mu)
    ) * _prabhakar_value(triple, lam, MixtureParams(alpha, nu, mu + q), spec)

    def integrand(ts):
        ts = np.asarray(ts, dtype=float)
        dens = _p_density_vec(b, ts, spec)
        out = np.zeros_like(ts)
        pos = (ts > 0.0) & (dens > 0.0)
        if pos.any():
            out[pos] = dens[pos] * np.exp(
                q * np.log(ts[pos]) - lam * ts[pos]
            )
        return out

    origin = mu - 1.0 + q
    numeric = integrate_semiinf(
        integrand,
        spec,
        ExponentialDecay(max(lam, 0.5)),
        origin_exponent=origin if origin < 0.0 else None,
    ).value
    if abs(analytic - numeric) > 1e-6 * (1.0 + abs(analytic)):
        raise ConsistencyError(
            f"tilted transform mismatch: closed form {analytic!r} vs "
            f"numeric integral {numeric!r}"
        )
    return analytic


def pollard_cdf(alpha: float, t: float, spec: QuadSpec = DEFAULT_SPEC) -> float:
    """Pollard distribution P_alpha(t) = 1 - F_alpha(t**(-1/alpha))."""
    if not 0.0 < alpha < 1.0:
        raise DomainError("pollard_cdf requires 0 < alpha < 1")
    if not t > 0.0:
        raise DomainError("pollard_cdf requires t > 0")
    return 1.0 - stable_cdf(alpha, t ** (-1.0 / alpha), spec)


def gml_density(alpha: float, theta: float, t: float) -> float:
    """Generalised Mittag-Leffler density, the (alpha, 1, 1, theta) case.

    Gamma(1+theta)/Gamma(1+theta/alpha) * (1/alpha) f_alpha(t**(-1/alpha))
    * t**((theta-1)/alpha - 1), valid for theta > -alpha.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError("gml_density requires 0 < alpha < 1")
    if theta <= -alpha:
        raise DomainError("theta must exceed -alpha")
    if not t > 0.0:
        raise DomainError("gml_density requires t > 0")
    pref = math.exp(log_gamma(1.0 + theta) - log_gamma(1.0 + theta / alpha))
    f = float(_stable_pdf_vec(alpha, np.array([t ** (-1.0 / alpha)]))[0])
    return pref / alpha * f * t ** ((theta - 1.0) / alpha - 1.0)


# ---------------------------------------------------------------------------
# law wrappers


@dataclass(frozen=True)
class MixtureLawR:
    """Three-parameter mixture law R with composite parameters (alpha, nu, mu).

    dR(t) = (1/Gamma(mu)) {I^nu f_alpha(.|t)}(1) t**(mu-1) dt; its Laplace
    transform in lam is the mixture value at x = 1.
    """

    alpha: float
    nu: float
    mu: float

    def params(self) -> MixtureParams:
        return MixtureParams(self.alpha, self.nu, self.mu)

    def density(self, t: float, spec: QuadSpec = DEFAULT_SPEC) -> float:
        if not t > 0.0:
            raise DomainError("density requires t > 0")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError("R density requires 0 < alpha < 1")
        y = t ** (-1.0 / self.alpha)
        rl = float(_rl_stable_standard_vec(self.alpha, self.nu, np.array([y]), spec)[0])
        expo = self.mu + (self.nu - 1.0) / self.alpha - 1.0
        return rl * math.exp(expo * math.log(t) - log_gamma(self.mu))

    def laplace(self, lam: float, spec: QuadSpec = DEFAULT_SPEC) -> float:
        return mixture_eval(self.params(), lam, 1.0, spec).value


@dataclass(frozen=True)
class PollardLaw:
    """Four-parameter law: Q unnormalised (mass 1/Gamma(beta+theta)), P = Gamma(bt) Q."""

    base: BaseParams

    def q_density(self, t: float, spec: QuadSpec = DEFAULT_SPEC) -> float:
        return q_density(self.base, t, spec)

    def p_density(self, t: float, spec: QuadSpec = DEFAULT_SPEC) -> float:
        return p_density(self.base, t, spec)

    def moment(self, n: float) -> float:
        return p_moment(self.base, n)

    def tilted_laplace(
        self, q: float, lam: float, spec: QuadSpec = DEFAULT_SPEC
    ) -> float:
        return p_tilted_laplace(self.base, q, lam, spec)

    def sample(self, n: int, rng: np.random.Generator, spec: QuadSpec = DEFAULT_SPEC):
        return p_sample(self.base, n, rng, spec)


# ---------------------------------------------------------------------------
# sampling

_GL8_X, _GL8_W = leggauss(8)


def _cumulative_mass(pdf_vec, ts: np.ndarray) -> np.ndarray:
    """Cumulative integral of a vectorized pdf along sorted grid ts (from 0)."""
    lo = np.concatenate([[0.0], ts[:-1]])
    hi = ts
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = mid[:, None] + half[:, None] * _GL8_X[None, :]
    vals = pdf_vec(nodes.ravel()).reshape(nodes.shape)
    seg = half * (vals @ _GL8_W)
    return np.cumsum(seg)


class InverseCdfSampler:
    """Inverse-CDF sampler over a tabulated four-parameter CDF.

    The CDF is tabulated on log-spaced nodes spanning the [1e-6, 1-1e-6]
    quantile window (located by bracketing on a coarse log grid) and
    inverted with monotone cubic interpolation.  Immutable after
    construction; draws use a caller-owned Generator.
    """

    quantile_margin = 1e-6

    def __init__(
        self,
        b: BaseParams,
        spec: QuadSpec = DEFAULT_SPEC,
        n_nodes: int = 1024,
        table: RlStableTable | None = None,
    ):
        self.base = b
        if (
            b.alpha < 1.0
            and b.nu > _BOUNDARY_TOL
            and abs(b.nu - (1.0 - b.alpha)) > _BOUNDARY_TOL
            and table is None
        ):
            table = RlStableTable(b.alpha, b.nu, spec)

        def pdf(ts):
            return _p_density_vec(b, ts, spec, table)

        coarse = np.geomspace(2.0**-40, 2.0**40, 241)
        cdf = _cumulative_mass(pdf, coarse)
        total = cdf[-1]
        if abs(total - 1.0) > 1e-4:
            raise SamplingError(
                f"four-parameter density mass {total!r} is not 1; "
                "cannot tabulate the CDF"
            )
        lo_q, hi_q = self.quantile_margin, 1.0 - self.quantile_margin
        i_lo = int(np.searchsorted(cdf, lo_q))
        i_hi = int(np.searchsorted(cdf, hi_q))
        t_lo = coarse[max(i_lo - 1, 0)]
        t_hi = coarse[min(i_hi, coarse.size - 1)]
        f_lo = cdf[max(i_lo - 1, 0)]

        grid = np.geomspace(t_lo, t_hi, n_nodes + 1)
        inner = _cumulative_mass(pdf, grid)
        # shift: mass below grid[0] equals f_lo minus the recomputed head
        head = inner[0]
        cdf_grid = inner - head + f_lo
        mask = np.concatenate([[True], np.diff(cdf_grid) > 1e-15])
        self._cdf = cdf_grid[mask]
        self._t = grid[mask]
        self._inv = PchipInterpolator(self._cdf, self._t)
        self.cdf_range = (float(self._cdf[0]), float(self._cdf[-1]))

    def draw(self, n: int, rng: np.random.Generator) -> np.ndarray:
        u = rng.uniform(0.0, 1.0, size=n)
        u = np.clip(u, self.cdf_range[0], self.cdf_range[1])
        return np.asarray(self._inv(u), dtype=float)


#: mass truncated away by the rejection envelope; far below Monte Carlo noise
_ENVELOPE_TAIL = 1e-13
_MIN_ACCEPT_RATE = 0.02
_MAX_TILT_RATIO = 5.0


def _tilt_envelope(alpha: float, theta: float) -> tuple[float, float]:
    """(t_cap, acceptance rate) for the polynomially tilted rejection sampler.

    t_cap is a Markov-inequality quantile of the tilted target: the smallest
    (m_k / tail)**(1/k) over moment orders k, so P(T > t_cap) <= tail.
    """
    b = BaseParams(alpha, 1.0, 1.0, theta)
    t_cap = math.inf
    for k in range(4, 61, 2):
        mk = p_moment(b, float(k))
        t_cap = min(t_cap, (mk / _ENVELOPE_TAIL) ** (1.0 / k))
    # proposal moment of order theta/alpha under the Pollard law
    ratio_mean = math.exp(
        log_gamma(1.0 + theta / alpha) - log_gamma(1.0 + theta)
    )
    accept = ratio_mean / t_cap ** (theta / alpha)
    return t_cap, accept


def p_sample(
    b: BaseParams,
    n: int,
    rng: np.random.Generator,
    spec: QuadSpec = DEFAULT_SPEC,
) -> np.ndarray:
    """n i.i.d. draws from the probability law P.

    Strategy: exact stable transform T = S**(-alpha) for (alpha, 1, 1, 0);
    envelope rejection against the t**(theta/alpha) tilt for (alpha, 1, 1,
    theta) with 0 < theta/alpha <= 5 and workable acceptance; tabulated
    inverse-CDF otherwise.
    """
    if n < 1:
        raise DomainError("sample count must be at least 1")
    alpha = b.alpha
    if alpha == 1.0 and b.nu <= _BOUNDARY_TOL:
        return np.ones(n, dtype=float)

    is_pollard_family = (
        alpha < 1.0 and abs(b.beta - 1.0) < 1e-14 and abs(b.gamma - 1.0) < 1e-14
    )
    if is_pollard_family and b.theta == 0.0:
        s = stable_sample_many(StableLaw(alpha, 1.0), n, rng)
        return s ** (-alpha)

    if is_pollard_family and 0.0 < b.theta / alpha <= _MAX_TILT_RATIO:
        t_cap, accept = _tilt_envelope(alpha, b.theta)
        if accept >= _MIN_ACCEPT_RATE:
            power = b.theta / alpha
            out = np.empty(0, dtype=float)
            budget = 200
            while out.size < n and budget > 0:
                m = int((n - out.size) / max(accept, 1e-3) * 1.2) + 16
                s = stable_sample_many(StableLaw(alpha, 1.0), m, rng)
                t = s ** (-alpha)
                u = rng.uniform(size=m)
                keep = (t <= t_cap) & (u <= (t / t_cap) ** power)
                out = np.concatenate([out, t[keep]])
                budget -= 1
            if out.size >= n:
                return out[:n]
            raise SamplingError(
                "tilted rejection under-produced; use the inverse-CDF route"
            )

    sampler = InverseCdfSampler(b, spec)
    return sampler.draw(n, rng)


# ---------------------------------------------------------------------------
# complete monotonicity (numeric necessary-condition check)


@dataclass(frozen=True)
class CmReport:
    """Outcome of the finite-difference alternating-sign test.

    A pass is evidence, not proof: only differences up to ``max_order`` on
    the given grid were checked, with order-scaled round-off tolerances.
    ``worst_margin`` is (order, min of (-1)^k Delta^k f, tolerance at that
    order); the test demands the minimum stays above -tolerance.
    """

    passed: bool
    max_order: int
    grid_spacing: float
    max_abs_f: float
    tolerances: tuple[float, ...]
    worst_margin: tuple[int, float, float]
    first_violation: tuple[int, int, float] | None = None


def cm_check(f, lambda_grid, max_order: int = 5, spec: QuadSpec = DEFAULT_SPEC) -> CmReport:
    """Check (-1)^k Delta^k f >= -tol_k on a uniform grid for k <= max_order.

    tol_k = 1e-8 * (2/h)**k * max|f| absorbs round-off amplification of
    k-th forward differences.  Reports the first violation if any.
    """
    if not 1 <= max_order <= 6:
        raise DomainError("max_order must lie in 1..6")
    grid = np.asarray(lambda_grid, dtype=float)
    if grid.ndim != 1 or grid.size < max_order + 1:
        raise DomainError("lambda grid must be 1-D with more than max_order points")
    steps = np.diff(grid)
    h = float(steps[0])
    if h <= 0.0 or np.any(np.abs(steps - h) > 1e-9 * abs(h)):
        raise DomainError("lambda grid must be uniformly spaced and ascending")

    try:
        vals = np.asarray(f(grid), dtype=float)
        if vals.shape != grid.shape:
            raise ValueError
    except Exception:
        vals = np.array([float(f(x)) for x in grid])

    max_abs = float(np.max(np.abs(vals)))
    tolerances = []
    first_violation = None
    worst = (0, math.inf, 0.0)
    passed = True
    d = vals.copy()
    for k in range(0, max_order + 1):
        tol_k = 1e-8 * (2.0 / h) ** k * max_abs
        tolerances.append(tol_k)
        signed = ((-1.0) ** k) * d
        if np.any(signed < -tol_k):
            passed = False
            idx = int(np.argmin(signed))
            if first_violation is None:
                first_violation = (k, idx, float(signed[idx]))
        k_min = float(np.min(signed))
        if k_min + tol_k < worst[1] + worst[2]:
            worst = (k, k_min, tol_k)
        d = np.diff(d)
    return CmReport(
        passed=passed,
        max_order=max_order,
        grid_spacing=h,
        max_abs_f=max_abs,
        tolerances=tuple(tolerances),
        worst_margin=worst,
        first_violation=first_violation,
    )
