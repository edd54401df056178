"""Laplace transforms of the sigma-finite flat measure and their checks.

Convention: the base measure on [0, 1) is m = theta * (uniform), so the
closed form for a positive step function f is

    Psi_theta(f) = exp( - integral of log f against m ),

and the constant f = d gives d^{-theta}, matching the one-dimensional
marginal.  The Monte Carlo route estimates the same quantity under the
unnormalized (gamma) law with the importance weight e^{total mass} folded
into the integrand: E[ exp( -sum c_k (f(x_k) - 1) ) ].

Finite variance rule: the weighted second moment equals Psi_theta(2f - 1),
so it is finite exactly when min f > 1/2.  Estimators refuse configurations
below that line unless explicitly overridden.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InfiniteVarianceError
from .estimation import EstimatorResult, pooled_mean
from .processes import RngStream, gamma_batch
from .special import log_gamma
from .stepfn import StepFunction

TRUNCATION_EPS = 1e-10


def log_mean(f: StepFunction, theta: float = 1.0) -> float:
    """Integral of log f against the base measure of total mass theta."""
    _check_theta(theta)
    if not isinstance(f, StepFunction):
        raise DomainError("f must be a StepFunction")
    return theta * float(np.sum(f.widths() * np.log(f.values)))


def phi(a: StepFunction, theta: float = 1.0) -> float:
    """Multiplicator cocycle exp(integral of log a dm); equals 1 on the kernel group."""
    return math.exp(log_mean(a, theta))


def analytic_laplace(theta: float, f: StepFunction) -> float:
    """Closed-form transform exp(-integral of log f dm)."""
    return math.exp(-log_mean(f, theta))


def mc_laplace(theta: float, f: StepFunction, n_samples: int, rng: RngStream, *,
               eps: float = TRUNCATION_EPS, streams: int = 1,
               allow_infinite_variance: bool = False) -> EstimatorResult:
    """Importance-weighted Monte Carlo estimate of the flat-measure transform."""
    _check_theta(theta)
    if not isinstance(f, StepFunction):
        raise DomainError("f must be a StepFunction")
    if f.min_value <= 0.5 and not allow_infinite_variance:
        raise InfiniteVarianceError(
            "second moment Psi(2f-1) diverges for min f <= 1/2; "
            "raise f or pass allow_infinite_variance=True to force the estimate"
        )

    def kernel(gen, rows):
        masses, locations, totals, _tails = gamma_batch(theta, eps, rows, gen)
        mean_f = (masses * f(locations)).sum(axis=1)
        return np.exp(totals * (1.0 - mean_f))

    (result,) = pooled_mean(n_samples, rng, streams, kernel)
    return result


@dataclass(frozen=True)
class QuasiInvarianceReport:
    """Exact and Monte Carlo sides of one multiplicator-invariance identity."""

    theta: float
    phi_a: float
    analytic_f: float
    analytic_af: float
    analytic_residual: float
    mc: EstimatorResult
    z_score: float


def quasi_invariance_check(theta: float, a: StepFunction, f: StepFunction,
                           n_samples: int = 100_000, rng: RngStream = RngStream(0), *,
                           eps: float = TRUNCATION_EPS, streams: int = 1) -> QuasiInvarianceReport:
    """Check Psi(a f) * phi(a) = Psi(f) exactly, and Psi(a f) by Monte Carlo."""
    af = a * f
    value_f = analytic_laplace(theta, f)
    value_af = analytic_laplace(theta, af)
    cocycle = phi(a, theta)
    residual = abs(value_af * cocycle - value_f)
    mc = mc_laplace(theta, af, n_samples, rng, eps=eps, streams=streams)
    z = (mc.estimate - value_af) / mc.stderr if mc.stderr > 0 else 0.0
    return QuasiInvarianceReport(
        theta=theta, phi_a=cocycle, analytic_f=value_f, analytic_af=value_af,
        analytic_residual=residual, mc=mc, z_score=z,
    )


@dataclass(frozen=True)
class FunctionalWindowReport:
    """Weighted distribution of <f, xi> on a window, against the tilted power law."""

    theta: float
    c_f: float
    t_grid: np.ndarray
    estimates: np.ndarray
    stderrs: np.ndarray
    exact: np.ndarray
    z_scores: np.ndarray


def functional_distribution_check(theta: float, f: StepFunction, b: float,
                                  n_samples: int, rng: RngStream, *,
                                  t_grid=None, eps: float = TRUNCATION_EPS,
                                  streams: int = 1) -> FunctionalWindowReport:
    """Compare the weighted law of <f, xi> below b with e^{-c(f)} t^theta / Gamma(theta+1).

    The indicator window keeps the weighted integrand bounded (total mass is at
    most t / min f on the event), so the estimator has finite variance for any
    positive step function.
    """
    _check_theta(theta)
    if not (isinstance(b, (int, float)) and math.isfinite(b) and b > 0.0):
        raise DomainError("window bound b must be a positive real")
    if t_grid is None:
        t_grid = np.linspace(b / 8.0, b, 8)
    t_grid = np.asarray(t_grid, dtype=float)
    if np.any(t_grid <= 0.0) or np.any(t_grid > b):
        raise DomainError("t grid must lie in (0, b]")

    def kernel(gen, rows):
        masses, locations, totals, _tails = gamma_batch(theta, eps, rows, gen)
        pairing = totals * (masses * f(locations)).sum(axis=1)
        return np.where(pairing[:, None] <= t_grid[None, :],
                        np.exp(totals)[:, None], 0.0)

    results = pooled_mean(n_samples, rng, streams, kernel, columns=t_grid.size)
    c_f = log_mean(f, theta)
    exact = np.exp(-c_f + theta * np.log(t_grid) - log_gamma(theta + 1.0))
    est = np.array([r.estimate for r in results])
    err = np.array([r.stderr for r in results])
    z = np.where(err > 0, (est - exact) / np.where(err > 0, err, 1.0), 0.0)
    return FunctionalWindowReport(
        theta=theta, c_f=c_f, t_grid=t_grid,
        estimates=est, stderrs=err, exact=exact, z_scores=z,
    )


def weighted_box_mass(spec, b_values, n_samples: int, rng: RngStream, *,
                      eps: float = TRUNCATION_EPS, streams: int = 1) -> list[EstimatorResult]:
    """Weighted mass of the box [0, b]^n under independent splitting of the atoms.

    One batch of draws serves every requested b: the kernel marks each atom
    with part i with probability theta_i / theta, forms the part sums, and
    weights the all-parts-below-b indicator by e^{total mass}.
    """
    b_arr = np.atleast_1d(np.asarray(b_values, dtype=float))
    if np.any(b_arr <= 0.0) or not np.all(np.isfinite(b_arr)):
        raise DomainError("box edges must be positive reals")
    cuts = np.cumsum(spec.probabilities())

    def kernel(gen, rows):
        masses, _locations, totals, _tails = gamma_batch(spec.theta, eps, rows, gen)
        marks = np.searchsorted(cuts, gen.random(masses.shape), side="right")
        marks = np.minimum(marks, spec.n - 1)
        scaled = masses * totals[:, None]
        largest_part = np.zeros(rows)
        for i in range(spec.n):
            part = np.where(marks == i, scaled, 0.0).sum(axis=1)
            largest_part = np.maximum(largest_part, part)
        inside = largest_part[:, None] <= b_arr[None, :]
        return np.where(inside, np.exp(totals)[:, None], 0.0)

    return pooled_mean(n_samples, rng, streams, kernel, columns=b_arr.size)


def _check_theta(theta):
    if not (isinstance(theta, (int, float)) and math.isfinite(theta) and theta > 0.0):
        raise DomainError("theta must be a positive real")
