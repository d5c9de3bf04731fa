"""Mittag-Leffler and Prabhakar functions: series, closed-form Laplace
transform, and a Laplace-inversion evaluation route.

The series routes are honest about double precision: beyond a static
argument bound, or when the predicted round-off of the alternating sum
exceeds the error budget, they raise RouteError pointing at the mixture
and inversion routes instead of silently degrading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, RouteError
from .numerics import DEFAULT_SPEC, QuadSpec, inverse_laplace, log_gamma

__all__ = [
    "PrabhakarTriple",
    "ml1",
    "prabhakar_series",
    "prabhakar_kernel",
    "prabhakar_laplace_closed",
    "prabhakar_via_inversion",
]

#: static series-route bound; catastrophic cancellation in the alternating
#: tail exceeds the double-precision budget beyond it
Z_MAX = 30.0

#: refuse the series when predicted round-off exceeds this fraction of
#: (1 + |sum|); realized error stays about an order of magnitude below
_CANCEL_BUDGET = 1e-7

#: any term this large guarantees the cancellation budget is blown
_LN_TERM_CEILING = 60.0

_MAX_TERMS = 10_000


def _term_magnitude_ok(ln_term: float):
    if ln_term > _LN_TERM_CEILING:
        raise RouteError(
            "series route terms grow beyond the double-precision cancellation "
            "budget; use the mixture or inversion route"
        )


@dataclass(frozen=True)
class PrabhakarTriple:
    """Series parameters (alpha, beta, gamma) of the three-parameter function."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if self.alpha < 0.0:
            raise DomainError("prabhakar alpha must be nonnegative")
        if not self.beta > 0.0:
            raise DomainError("prabhakar beta must be positive")
        if not self.gamma > 0.0:
            raise DomainError("prabhakar gamma must be positive")


def _check_route(alpha: float, z: float):
    if abs(z) > Z_MAX:
        raise RouteError(
            f"series route refuses |z| = {abs(z):.3g} > {Z_MAX:g}; "
            "use the mixture or inversion route"
        )
    if alpha == 0.0 and abs(z) >= 1.0:
        raise RouteError(
            "series route requires |z| < 1 when alpha = 0; "
            "use the mixture or inversion route"
        )


def _guarded_sum(term_iter) -> float:
    """Neumaier-compensated sum with truncation and cancellation refusal.

    Truncates after three consecutive terms below 1e-18 of the partial sum;
    refuses when eps * sum|terms| exceeds the cancellation budget.
    """
    s = 0.0
    comp = 0.0
    abs_sum = 0.0
    small_run = 0
    for term in term_iter:
        t = s + term
        if abs(s) >= abs(term):
            comp += (s - t) + term
        else:
            comp += (term - t) + s
        s = t
        abs_sum += abs(term)
        if abs(term) < 1e-18 * abs(s + comp):
            small_run += 1
            if small_run >= 3:
                break
        else:
            small_run = 0
    else:
        raise ConvergenceError("series did not truncate within the term budget")
    total = s + comp
    predicted = np.finfo(float).eps * abs_sum
    if predicted > _CANCEL_BUDGET * (1.0 + abs(total)):
        raise RouteError(
            f"series route cancellation (predicted {predicted:.2g}) exceeds "
            "the double-precision budget; use the mixture or inversion route"
        )
    return total


def ml1(alpha: float, z: float) -> float:
    """One-parameter Mittag-Leffler function E_alpha(z) by direct series."""
    if alpha < 0.0:
        raise DomainError("ml1 requires alpha >= 0")
    _check_route(alpha, z)
    if z == 0.0:
        return 1.0
    ln_abs_z = math.log(abs(z))

    def terms():
        for k in range(_MAX_TERMS):
            ln_term = k * ln_abs_z - log_gamma(alpha * k + 1.0)
            if z < 0.0:
                _term_magnitude_ok(ln_term)
            yield (math.copysign(1.0, z) ** k) * math.exp(min(ln_term, 700.0))

    return _guarded_sum(terms())


def prabhakar_series(p: PrabhakarTriple, z: float) -> float:
    """E^gamma_(alpha,beta)(z) by the log-domain coefficient recurrence.

    coef_(k+1)/coef_k = (gamma+k)/(k+1) * Gamma(alpha k + beta)/Gamma(alpha k + alpha + beta);
    all coefficients are positive, signs come from z alone.
    """
    _check_route(p.alpha, z)
    alpha, beta, gamma = p.alpha, p.beta, p.gamma
    if z == 0.0:
        return math.exp(-log_gamma(beta))
    ln_abs_z = math.log(abs(z))
    sign_z = math.copysign(1.0, z)

    def terms():
        ln_coef = -log_gamma(beta)  # k = 0: Gamma(gamma)/Gamma(gamma)/Gamma(beta)
        k = 0
        while k < _MAX_TERMS:
            ln_term = ln_coef + k * ln_abs_z
            if z < 0.0:
                _term_magnitude_ok(ln_term)
            yield (sign_z**k) * math.exp(min(ln_term, 700.0))
            ln_coef += (
                math.log(gamma + k)
                - math.log(k + 1.0)
                + log_gamma(alpha * k + beta)
                - log_gamma(alpha * k + alpha + beta)
            )
            k += 1

    return _guarded_sum(terms())


def _prabhakar_series_vec(p: PrabhakarTriple, zs: np.ndarray) -> np.ndarray:
    """Vectorized series over an argument array; refuses if any entry would."""
    zs = np.asarray(zs, dtype=float)
    for z in (zs.min(), zs.max()):
        _check_route(p.alpha, float(z))
    alpha, beta, gamma = p.alpha, p.beta, p.gamma
    sign_z = np.where(zs >= 0.0, 1.0, -1.0)
    ln_abs_z = np.log(np.maximum(np.abs(zs), 1e-300))

    s = np.zeros_like(zs)
    comp = np.zeros_like(zs)
    abs_sum = np.zeros_like(zs)
    small_runs = np.zeros(zs.shape, dtype=int)
    active = np.ones(zs.shape, dtype=bool)
    ln_coef = -log_gamma(beta)
    for k in range(_MAX_TERMS):
        term = np.where(
            active & ((zs != 0.0) | (k == 0)),
            (sign_z**k) * np.exp(ln_coef + k * ln_abs_z),
            0.0,
        )
        t = s + term
        comp += np.where(np.abs(s) >= np.abs(term), (s - t) + term, (term - t) + s)
        s = t
        abs_sum += np.abs(term)
        small = np.abs(term) < 1e-18 * np.abs(s + comp)
        small_runs = np.where(small, small_runs + 1, 0)
        active &= small_runs < 3
        if not active.any():
            break
        ln_coef += (
            math.log(gamma + k)
            - math.log(k + 1.0)
            + log_gamma(alpha * k + beta)
            - log_gamma(alpha * k + alpha + beta)
        )
    else:
        raise ConvergenceError("series did not truncate within the term budget")
    total = s + comp
    predicted = np.finfo(float).eps * abs_sum
    if np.any(predicted > _CANCEL_BUDGET * (1.0 + np.abs(total))):
        raise RouteError(
            "series route cancellation exceeds the double-precision budget; "
            "use the mixture or inversion route"
        )
    return total


def _prabhakar_kernel_vec(p: PrabhakarTriple, lam: float, xs: np.ndarray) -> np.ndarray:
    xs = np.asarray(xs, dtype=float)
    out = np.zeros_like(xs)
    pos = xs > 0.0
    if pos.any():
        x = xs[pos]
        out[pos] = x ** (p.beta - 1.0) * _prabhakar_series_vec(p, -lam * x**p.alpha)
    return out


def prabhakar_kernel(
    p: PrabhakarTriple, lam: float, x: float
) -> float:
    """Prabhakar kernel x**(beta-1) E^gamma_(alpha,beta)(-lam x**alpha)."""
    if lam < 0.0:
        raise DomainError("kernel rate lambda must be nonnegative")
    if not x > 0.0:
        raise DomainError("prabhakar_kernel requires x > 0")
    z = -lam * x**p.alpha
    return x ** (p.beta - 1.0) * prabhakar_series(p, z)


def prabhakar_laplace_closed(p: PrabhakarTriple, lam: float, s):
    """Closed-form transform s**(alpha gamma - beta) / (lam + s**alpha)**gamma.

    Accepts positive real s (scalar or array) or complex s off the negative
    real axis, evaluated in the log domain with principal branches.
    """
    if lam < 0.0:
        raise DomainError("rate lambda must be nonnegative")
    arr = np.asarray(s)
    if not np.iscomplexobj(arr):
        if np.any(arr <= 0.0):
            raise DomainError(
                "closed-form transform is restricted to s > 0 "
                "(s = 0 only converges when alpha*gamma > beta)"
            )
        out = np.exp(
            (p.alpha * p.gamma - p.beta) * np.log(arr)
            - p.gamma * np.log(lam + arr**p.alpha)
        )
        return float(out) if np.ndim(s) == 0 else out
    log_s = np.log(arr.astype(complex))
    out = np.exp(
        (p.alpha * p.gamma - p.beta) * log_s
        - p.gamma * np.log(lam + np.exp(p.alpha * log_s))
    )
    return complex(out) if np.ndim(s) == 0 else out


def prabhakar_via_inversion(
    p: PrabhakarTriple, lam: float, x: float, spec: QuadSpec = DEFAULT_SPEC
) -> float:
    """Kernel value by numeric inversion of the closed-form transform."""
    if not x > 0.0:
        raise DomainError("prabhakar_via_inversion requires x > 0")
    return inverse_laplace(lambda s: prabhakar_laplace_closed(p, lam, s), x, spec)
