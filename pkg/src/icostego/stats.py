"""Chi-square tail probability without a SciPy dependency.

The survival function is the regularized upper incomplete gamma function
Q(df/2, x/2), evaluated by the standard series / continued-fraction split
(series for x < a+1, modified Lentz continued fraction otherwise). Accuracy
is far beyond what the detector thresholds need; the test suite checks it
against an independent statistics library.
"""

from __future__ import annotations

import math

_EPS = 1e-15
_MAX_ITER = 500


def binary_entropy(p_one: float) -> float:
    """Shannon entropy in bits of a two-point distribution, H(p)."""
    if p_one <= 0.0 or p_one >= 1.0:
        return 0.0
    p_zero = 1.0 - p_one
    return -(p_one * math.log2(p_one) + p_zero * math.log2(p_zero))


def chi2_sf(x: float, df: int) -> float:
    """P(X >= x) for X ~ chi-square with df degrees of freedom."""
    if df <= 0:
        raise ValueError("degrees of freedom must be positive")
    if x <= 0.0:
        return 1.0
    return _gammq(0.5 * df, 0.5 * x)


def _gammq(a: float, x: float) -> float:
    if x < a + 1.0:
        return 1.0 - _gamma_p_series(a, x)
    return _gamma_q_contfrac(a, x)


def _gamma_p_series(a: float, x: float) -> float:
    log_prefactor = -x + a * math.log(x) - math.lgamma(a)
    term = 1.0 / a
    total = term
    denom = a
    for _ in range(_MAX_ITER):
        denom += 1.0
        term *= x / denom
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(log_prefactor)


def _gamma_q_contfrac(a: float, x: float) -> float:
    log_prefactor = -x + a * math.log(x) - math.lgamma(a)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b if b != 0.0 else 1.0 / tiny
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return math.exp(log_prefactor) * h
