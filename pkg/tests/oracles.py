"""Independent oracles used to freeze expected values.

Everything here is computed without touching the library's own evaluation
paths: closed forms for the alpha = 1/2 (Levy) case, brute-force
high-precision series via mpmath, and finite differences.
"""

import math

import mpmath
import numpy as np
from scipy.special import erfc, erfcx


def levy_pdf(x):
    """f_(1/2)(x) = x**(-3/2) exp(-1/(4x)) / (2 sqrt(pi)), unit scale."""
    x = np.asarray(x, dtype=float)
    return x**-1.5 * np.exp(-1.0 / (4.0 * x)) / (2.0 * math.sqrt(math.pi))


def levy_cdf(x):
    """F_(1/2)(x) = erfc(1/(2 sqrt(x)))."""
    x = np.asarray(x, dtype=float)
    return erfc(1.0 / (2.0 * np.sqrt(x)))


def ml_half(z):
    """E_(1/2)(-z) = exp(z^2) erfc(z) for z >= 0 (scaled complementary erf)."""
    return float(erfcx(z))


def prabhakar_brute(alpha, beta, gamma, z, dps=60, terms=4000):
    """Brute-force Prabhakar series at high precision (the slow oracle)."""
    with mpmath.workdps(dps):
        a, b, g = mpmath.mpf(alpha), mpmath.mpf(beta), mpmath.mpf(gamma)
        zz = mpmath.mpf(z)
        s = mpmath.mpf(0)
        for k in range(terms):
            term = (
                mpmath.gamma(g + k)
                / (mpmath.factorial(k) * mpmath.gamma(a * k + b))
                * zz**k
            )
            s += term
            if k > 8 and abs(term) < mpmath.mpf(10) ** (-dps) * abs(s):
                break
        return float(s / mpmath.gamma(g))


def ml_brute(alpha, z, dps=60, terms=4000):
    return prabhakar_brute(alpha, 1.0, 1.0, z, dps=dps, terms=terms)


def loggamma_mp(z):
    return float(mpmath.loggamma(mpmath.mpf(z)))


def central_difference(f, x, h):
    """Fourth-order central first derivative."""
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


def ks_statistic(draws, cdf):
    """Two-sided Kolmogorov-Smirnov statistic of draws against a CDF callable."""
    xs = np.sort(np.asarray(draws, dtype=float))
    n = xs.size
    u = np.asarray(cdf(xs), dtype=float)
    dplus = np.max(np.arange(1, n + 1) / n - u)
    dminus = np.max(u - np.arange(0, n) / n)
    return max(dplus, dminus)


def ks_critical(n, level_1pct=True):
    """Asymptotic KS critical value (1.628/sqrt(n) at the 1% level)."""
    return (1.628 if level_1pct else 1.358) / math.sqrt(n)
