"""Small goodness-of-fit toolbox used by the test battery and demos."""

from __future__ import annotations

import math

import numpy as np
from scipy import special as sp

from .errors import DomainError


def kolmogorov_sf(t: float) -> float:
    """Survival function of the Kolmogorov distribution, 2 sum (-1)^{k-1} e^{-2 k^2 t^2}."""
    if t <= 0.0:
        return 1.0
    total = 0.0
    for k in range(1, 101):
        term = 2.0 * (-1.0) ** (k - 1) * math.exp(-2.0 * k * k * t * t)
        total += term
        if abs(term) < 1e-16:
            break
    return min(1.0, max(0.0, total))


def ks_statistic(samples, cdf) -> float:
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    if n < 1:
        raise DomainError("KS statistic needs at least one sample")
    probs = np.asarray(cdf(x), dtype=float)
    grid = np.arange(1, n + 1) / n
    return float(np.max(np.maximum(grid - probs, probs - (grid - 1.0 / n))))


def ks_test(samples, cdf) -> tuple[float, float]:
    """One-sample KS statistic and asymptotic p-value (with the small-n correction)."""
    d = ks_statistic(samples, cdf)
    en = math.sqrt(len(samples))
    return d, kolmogorov_sf((en + 0.12 + 0.11 / en) * d)


def ks_2sample(x, y) -> tuple[float, float]:
    """Two-sample KS statistic and asymptotic p-value."""
    x = np.sort(np.asarray(x, dtype=float))
    y = np.sort(np.asarray(y, dtype=float))
    pooled = np.concatenate([x, y])
    cdf_x = np.searchsorted(x, pooled, side="right") / x.size
    cdf_y = np.searchsorted(y, pooled, side="right") / y.size
    d = float(np.max(np.abs(cdf_x - cdf_y)))
    en = math.sqrt(x.size * y.size / (x.size + y.size))
    return d, kolmogorov_sf((en + 0.12 + 0.11 / en) * d)


def gamma_cdf(theta: float, x) -> np.ndarray:
    return sp.gammainc(theta, np.asarray(x, dtype=float))


def beta_cdf(a: float, b: float, x) -> np.ndarray:
    return sp.betainc(a, b, np.asarray(x, dtype=float))


def pearson_corr(x, y) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xc = x - x.mean()
    yc = y - y.mean()
    return float((xc @ yc) / math.sqrt((xc @ xc) * (yc @ yc)))
