"""Pooled Monte Carlo estimation over deterministic stream fan-out.

Estimators hand this module a kernel ``kernel(gen, rows) -> (rows, m) array``
that samples and evaluates its own integrand; the harness splits the sample
budget across streams, walks each stream in fixed-size chunks, and pools
means and standard errors in stream order.  The merge is a pure function of
(seed, stream count, per-stream counts), which is what the byte-identical
rerun guarantee rests on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .processes import RngStream

CHUNK_ROWS = 32768


@dataclass(frozen=True)
class EstimatorResult:
    """A Monte Carlo mean with its standard error and reproducibility tags."""

    estimate: float
    stderr: float
    n_samples: int
    seed: int
    streams: int

    def __post_init__(self):
        if not (math.isfinite(self.estimate) and math.isfinite(self.stderr)):
            raise DomainError("estimate and stderr must be finite")
        if self.stderr < 0.0 or self.n_samples < 1 or self.streams < 1:
            raise DomainError("stderr must be >= 0 and counts must be positive")


def stream_counts(n_samples: int, streams: int) -> list[int]:
    """Deterministic split of the sample budget across streams."""
    if n_samples < 1 or streams < 1:
        raise DomainError("sample and stream counts must be positive integers")
    base, extra = divmod(n_samples, streams)
    return [base + (1 if s < extra else 0) for s in range(streams)]

def pooled_mean(n_samples: int, rng: RngStream, streams: int, kernel, columns: int = 1,
                chunk: int = CHUNK_ROWS) -> list[EstimatorResult]:
    """Pooled mean/stderr per column of the kernel output, merged in stream order."""
    count = 0
    total = np.zeros(columns)
    total_sq = np.zeros(columns)
    for s, rows_for_stream in enumerate(stream_counts(n_samples, streams)):
        gen = rng.child(s).generator()
        left = rows_for_stream
        while left > 0:
            rows = min(chunk, left)
            vals = np.asarray(kernel(gen, rows), dtype=float)
            if vals.ndim == 1:
                vals = vals[:, None]
            count += rows
            total += vals.sum(axis=0)
            total_sq += (vals * vals).sum(axis=0)
            left -= rows
    mean = total / count
    if count > 1:
        var = np.maximum(total_sq - count * mean * mean, 0.0) / (count - 1)
        err = np.sqrt(var / count)
    else:
        err = np.zeros(columns)
    return [
        EstimatorResult(float(m), float(e), count, rng.seed, streams)
        for m, e in zip(mean, err)
    ]
