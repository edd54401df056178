"""Samplers on the cone of summable discrete measures.

The chain is: stick draws (GEM) -> stick-breaking masses -> decreasing
rearrangement (the normalized law) -> scaling by an independent gamma total
(the unnormalized random measure).  The sigma-finite targets are realized by
importance weights e^{total mass} attached to the unnormalized draws; nothing
here ever tries to sample an infinite measure directly.

Truncation policy: stick-breaking stops once the residual stick product drops
to ``eps``; the discarded mass is recorded on the draw as ``tail_bound`` so
estimator bias can always be budgeted against the Monte Carlo error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError
from .stepfn import StepFunction


@dataclass(frozen=True)
class RngStream:
    """Counter-based random stream keyed by (seed, stream_id).

    Distinct keys give statistically independent streams, and a fixed key
    reproduces its draws bit-for-bit on any machine, which is what makes
    byte-identical reruns possible.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        if not isinstance(self.seed, int) or not isinstance(self.stream_id, int):
            raise DomainError("seed and stream_id must be integers")
        if self.seed < 0 or self.stream_id < 0:
            raise DomainError("seed and stream_id must be non-negative")

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed, self.stream_id], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def child(self, offset: int) -> "RngStream":
        return RngStream(self.seed, self.stream_id + offset)


def as_generator(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise DomainError("rng must be an RngStream or a numpy Generator")


@dataclass(frozen=True)
class GemDraw:
    """Stick fractions y_i in (0,1) plus the residual product prod(1 - y_i)."""

    sticks: np.ndarray
    residual: float

    def __post_init__(self):
        y = np.asarray(self.sticks, dtype=float)
        if y.ndim != 1 or y.size < 1:
            raise DomainError("a GEM draw holds a non-empty stick vector")
        if np.any(y <= 0.0) or np.any(y >= 1.0):
            raise DomainError("stick fractions must lie strictly inside (0, 1)")
        check = float(np.prod(1.0 - y))
        if abs(self.residual - check) > 1e-12 * (check + 1e-300):
            raise DomainError("residual does not match the stick product")
        object.__setattr__(self, "sticks", y)


@dataclass(frozen=True)
class WeightedAtomSeries:
    """Finitely many atoms (mass, location) of a discrete measure on [0, 1).

    ``masses`` is sorted in decreasing order.  ``total_mass`` includes the
    truncated tail, so total_mass == masses.sum() + tail_bound for freshly
    sampled series.  ``log_weight`` carries the importance weight (log scale)
    when the series stands for a draw re-weighted toward a sigma-finite law.
    """

    masses: np.ndarray
    locations: np.ndarray
    total_mass: float
    tail_bound: float
    log_weight: float = 0.0
    normalized: bool = False

    def __post_init__(self):
        m = np.asarray(self.masses, dtype=float)
        x = np.asarray(self.locations, dtype=float)
        if m.ndim != 1 or x.ndim != 1 or m.size != x.size or m.size < 1:
            raise DomainError("masses and locations must be matching non-empty vectors")
        if not np.all(np.isfinite(m)) or np.any(m <= 0.0):
            raise DomainError("atom masses must be finite and strictly positive")
        if np.any(np.diff(m) > 0.0):
            raise DomainError("atom masses must be non-increasing")
        if np.any(x < 0.0) or np.any(x >= 1.0):
            raise DomainError("atom locations must lie in [0, 1)")
        if not (math.isfinite(self.total_mass) and self.total_mass > 0.0):
            raise DomainError("total_mass must be a positive real")
        if not (math.isfinite(self.tail_bound) and self.tail_bound >= 0.0):
            raise DomainError("tail_bound must be a non-negative real")
        if self.normalized and not (1.0 - self.tail_bound - 1e-9 <= m.sum() <= 1.0 + 1e-9):
            raise DomainError("normalized series must carry unit total mass")
        object.__setattr__(self, "masses", m)
        object.__setattr__(self, "locations", x)


def sample_gem(theta: float, eps: float, rng) -> GemDraw:
    """Draw sticks with density theta * y^(theta-1) until the residual is <= eps."""
    _check_theta_eps(theta, eps)
    gen = as_generator(rng)
    log_eps = math.log(eps)
    block = max(8, int(math.ceil(math.log(1.0 / eps) / math.log(theta + 1.0))) + 8)
    pieces = []
    carried = 0.0
    while True:
        y = _stick_block(gen, theta, block)
        run = carried + np.cumsum(np.log1p(-y))
        hits = np.nonzero(run <= log_eps)[0]
        if hits.size:
            k = int(hits[0])
            pieces.append(y[: k + 1])
            sticks = np.concatenate(pieces)
            return GemDraw(sticks=sticks, residual=float(np.prod(1.0 - sticks)))
        pieces.append(y)
        carried = float(run[-1])
        block = 8


def _stick_block(gen, theta, count):
    # Inverse CDF of Beta(1, theta): y = 1 - u^(1/theta), via expm1 so that
    # large theta (sticks near zero) keeps full precision.  The shift makes
    # u positive under the log and the clamp keeps log1p(-y) finite when
    # expm1 saturates at tiny u.
    u = 1.0 - gen.random(count)
    y = u if theta == 1.0 else -np.expm1(np.log(u) / theta)
    return np.minimum(y, 1.0 - 1e-16)


def _check_theta_eps(theta, eps):
    if not (isinstance(theta, (int, float)) and math.isfinite(theta) and theta > 0.0):
        raise DomainError("theta must be a positive real")
    if not (isinstance(eps, float) and 0.0 < eps < 1.0):
        raise DomainError("truncation eps must lie in (0, 1)")


def stick_break(draw: GemDraw) -> np.ndarray:
    """Masses c_i = y_i * prod_{j<i} (1 - y_j), in stick order (unsorted)."""
    y = draw.sticks
    prefix = np.concatenate(([1.0], np.cumprod(1.0 - y)[:-1]))
    return y * prefix


def sort_decreasing(masses) -> np.ndarray:
    """Decreasing rearrangement; ties keep their original order (stable)."""
    m = np.asarray(masses, dtype=float)
    if m.ndim != 1 or not np.all(np.isfinite(m)) or np.any(m <= 0.0):
        raise DomainError("masses must be a vector of positive reals")
    return m[np.argsort(-m, kind="stable")]


def sample_dirichlet_process(theta: float, eps: float, rng) -> WeightedAtomSeries:
    """Normalized draw: sorted stick-breaking masses with i.i.d. uniform locations."""
    gen = as_generator(rng)
    draw = sample_gem(theta, eps, gen)
    masses = stick_break(draw)
    locations = gen.random(masses.size)
    order = np.argsort(-masses, kind="stable")
    return WeightedAtomSeries(
        masses=masses[order],
        locations=locations[order],
        total_mass=1.0,
        tail_bound=draw.residual,
        normalized=True,
    )


def sample_gamma_process(theta: float, eps: float, rng) -> WeightedAtomSeries:
    """Unnormalized draw: a normalized series scaled by an independent gamma total."""
    gen = as_generator(rng)
    base = sample_dirichlet_process(theta, eps, gen)
    total = sample_gamma_variate(theta, gen)
    return WeightedAtomSeries(
        masses=base.masses * total,
        locations=base.locations,
        total_mass=total,
        tail_bound=base.tail_bound * total,
        normalized=False,
    )


def sample_gamma_variate(shape: float, rng) -> float:
    """Exact gamma(shape, 1) draw; shape < 1 uses the u^(1/shape) boost internally."""
    if not (isinstance(shape, (int, float)) and math.isfinite(shape) and shape > 0.0):
        raise DomainError("shape must be a positive real")
    gen = as_generator(rng)
    value = float(gen.standard_gamma(shape))
    while value == 0.0:  # guard against underflow at tiny shapes
        value = float(gen.standard_gamma(shape))
    return value


def lebesgue_log_weight(series: WeightedAtomSeries) -> float:
    """Log importance weight e^{total mass} that tilts the gamma law to the flat one."""
    return float(series.total_mass)


def weight_as_lebesgue(series: WeightedAtomSeries) -> WeightedAtomSeries:
    """Copy of the series with the flat-measure importance weight filled in."""
    return replace(series, log_weight=lebesgue_log_weight(series))


def apply_multiplicator(a: StepFunction, series: WeightedAtomSeries) -> WeightedAtomSeries:
    """Multiply each atom mass by a(location) and re-sort jointly by new mass.

    The importance weight is left untouched: the weight belongs to the draw
    being transported, not to the transported image.
    """
    if not isinstance(a, StepFunction):
        raise DomainError("multiplicator must be a StepFunction")
    scaled = series.masses * a(series.locations)
    order = np.argsort(-scaled, kind="stable")
    tail = series.tail_bound * a.max_value
    return WeightedAtomSeries(
        masses=scaled[order],
        locations=series.locations[order],
        total_mass=float(scaled.sum() + tail),
        tail_bound=float(tail),
        log_weight=series.log_weight,
        normalized=False,
    )


def partition_sums(series: WeightedAtomSeries, spec, rng) -> np.ndarray:
    """Split atoms independently with probabilities theta_i/theta; return part sums.

    The tail mass beyond the truncation point is unassigned, so each sum is
    biased low by at most tail_bound.
    """
    gen = as_generator(rng)
    cuts = np.cumsum(spec.probabilities())
    marks = np.searchsorted(cuts, gen.random(series.masses.size), side="right")
    marks = np.minimum(marks, spec.n - 1)
    return np.bincount(marks, weights=series.masses, minlength=spec.n)


def series_record(series: WeightedAtomSeries, theta: float, eps: float, rng: RngStream) -> dict:
    """Flat JSON-ready record of one draw plus the sampler configuration."""
    return {
        "theta": float(theta),
        "eps": float(eps),
        "masses": [float(v) for v in series.masses],
        "locations": [float(v) for v in series.locations],
        "total_mass": float(series.total_mass),
        "tail_bound": float(series.tail_bound),
        "log_weight": float(series.log_weight),
        "seed": rng.seed,
        "stream_id": rng.stream_id,
    }


def series_from_record(record: dict) -> WeightedAtomSeries:
    return WeightedAtomSeries(
        masses=np.asarray(record["masses"], dtype=float),
        locations=np.asarray(record["locations"], dtype=float),
        total_mass=float(record["total_mass"]),
        tail_bound=float(record["tail_bound"]),
        log_weight=float(record.get("log_weight", 0.0)),
        normalized=bool(record.get("normalized", False)),
    )


# ---------------------------------------------------------------------------
# Vectorized batch kernels used by the Monte Carlo estimators.


def stick_masses_batch(theta: float, eps: float, rows: int, gen) -> tuple[np.ndarray, np.ndarray]:
    """Normalized stick-breaking masses for ``rows`` draws at once.

    Returns (masses, tails): a (rows, K) matrix zero-padded after each row's
    truncation column, and the per-row residual mass at the cut.  Zero padding
    keeps downstream reductions branch-free.
    """
    _check_theta_eps(theta, eps)
    log_eps = math.log(eps)
    cols = max(8, int(math.ceil(math.log(1.0 / eps) / math.log(theta + 1.0))) + 8)
    y = _stick_block(gen, theta, rows * cols).reshape(rows, cols)
    run = np.cumsum(np.log1p(-y), axis=1)
    while run[:, -1].max() > log_eps:
        ext = _stick_block(gen, theta, rows * 8).reshape(rows, 8)
        y = np.hstack([y, ext])
        run = np.hstack([run, run[:, -1:] + np.cumsum(np.log1p(-ext), axis=1)])
    cut = np.argmax(run <= log_eps, axis=1)
    keep = np.arange(y.shape[1])[None, :] <= cut[:, None]
    prefix = np.exp(np.hstack([np.zeros((rows, 1)), run[:, :-1]]))
    masses = np.where(keep, y * prefix, 0.0)
    tails = np.exp(run[np.arange(rows), cut])
    return masses, tails


def gamma_batch(theta: float, eps: float, rows: int, gen):
    """Batch of unnormalized draws as (normalized masses, locations, totals, tails)."""
    masses, tails = stick_masses_batch(theta, eps, rows, gen)
    locations = gen.random(masses.shape)
    totals = gen.standard_gamma(theta, rows)
    totals = np.where(totals == 0.0, np.finfo(float).tiny, totals)
    return masses, locations, totals, tails
