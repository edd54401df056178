#!/usr/bin/env python3
"""A tour of the samplers: sticks, normalized series, gamma totals, part sums."""

import numpy as np

from conicpd import (
    PartitionSpec,
    RngStream,
    partition_sums,
    sample_dirichlet_process,
    sample_gamma_process,
)
from conicpd.stats import gamma_cdf, ks_test

theta = 1.5
eps = 1e-10
gen = RngStream(2024).generator()

print(f"theta = {theta}, truncation eps = {eps}\n")

series = sample_dirichlet_process(theta, eps, gen)
print("one normalized draw:")
print(f"  atoms kept      : {series.masses.size}")
print(f"  five largest    : {np.round(series.masses[:5], 4)}")
print(f"  sum of masses   : {series.masses.sum():.12f}")
print(f"  truncated tail  : {series.tail_bound:.2e}")

unnorm = sample_gamma_process(theta, eps, gen)
print("\none unnormalized draw (same construction, scaled by a gamma total):")
print(f"  total mass      : {unnorm.total_mass:.4f}")
print(f"  largest atom    : {unnorm.masses[0]:.4f}")

# The totals of many unnormalized draws follow the gamma(theta) law exactly.
totals = np.array([sample_gamma_process(theta, eps, gen).total_mass
                   for _ in range(4000)])
d, p = ks_test(totals, lambda x: gamma_cdf(theta, x))
print(f"\ntotals of 4000 draws vs gamma({theta}): KS d = {d:.4f}, p = {p:.3f}")

# Splitting atoms into parts with probabilities theta_i / theta turns one
# draw of weight theta into independent gamma(theta_i) part sums.
spec = PartitionSpec(np.array([0.5, 1.0]))
sums = np.array([partition_sums(sample_gamma_process(spec.theta, eps, gen), spec, gen)
                 for _ in range(4000)])
for i, w in enumerate(spec.weights):
    d, p = ks_test(sums[:, i], lambda x, w=w: gamma_cdf(w, x))
    print(f"part {i} (weight {w}) vs gamma({w}): KS d = {d:.4f}, p = {p:.3f}")
corr = np.corrcoef(sums[:, 0], sums[:, 1])[0, 1]
print(f"correlation between the parts: {corr:+.4f}  (should be ~0)")
