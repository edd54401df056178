import math

import numpy as np
import pytest
from scipy import integrate

from conicpd import (
    DomainError,
    RngStream,
    SphereConfig,
    charfun_gap_rows,
    gaussian_charfun,
    mp_convergence_table,
    sphere_charfun_mc,
    sphere_charfun_quad,
)
from conicpd.gaussian import sphere_charfun_mc_vector


def test_sphere_config_defaults_and_validation():
    cfg = SphereConfig(n=9)
    assert cfg.radius == 3.0
    assert SphereConfig(n=4, radius=1.5).radius == 1.5
    with pytest.raises(DomainError):
        SphereConfig(n=1)
    with pytest.raises(DomainError):
        SphereConfig(n=3, radius=-1.0)
    with pytest.raises(DomainError):
        SphereConfig(n=2.5, radius=1.0)


def test_gaussian_charfun_values():
    assert gaussian_charfun(0.0) == 1.0
    assert gaussian_charfun(1.0) == pytest.approx(math.exp(-0.5), rel=1e-15)
    assert gaussian_charfun(math.sqrt(2.0)) == pytest.approx(math.exp(-1.0), rel=1e-15)
    with pytest.raises(DomainError):
        gaussian_charfun(float("inf"))


def test_quad_charfun_at_zero_is_one():
    for n in (2, 3, 7, 40):
        assert sphere_charfun_quad(SphereConfig(n=n), 0.0) == pytest.approx(1.0, abs=1e-12)


def test_quad_charfun_three_dimensions_closed_form():
    # n=3: the coordinate marginal is uniform, E cos(k u) = sin(k)/k with
    # k = radius * s
    cfg = SphereConfig(n=3)
    assert sphere_charfun_quad(cfg, 1.2) == pytest.approx(
        0.4204467671894469494686, abs=1e-10)
    for s in (0.4, 2.3):
        k = cfg.radius * s
        assert sphere_charfun_quad(cfg, s) == pytest.approx(math.sin(k) / k, abs=1e-10)


def test_quad_charfun_five_dimensions_closed_form():
    # n=5: density prop to (1-u^2), E cos(k u) = 3 (sin k - k cos k) / k^3
    assert sphere_charfun_quad(SphereConfig(n=5), 1.0) == pytest.approx(
        0.5814706705997193506638, abs=1e-10)


def test_quad_charfun_two_dimensions_against_endpoint_weighted_quadrature():
    # independent route for the n=2 arcsine marginal via QUADPACK's algebraic
    # endpoint weighting
    cfg = SphereConfig(n=2)
    for s in (0.5, 1.0, 2.0):
        k = cfg.radius * s
        val, _ = integrate.quad(lambda r: math.cos(k * r), -1.0, 1.0,
                                weight="alg", wvar=(-0.5, -0.5))
        assert sphere_charfun_quad(cfg, s) == pytest.approx(val / math.pi, abs=1e-10)


def test_quad_vs_mc_agreement():
    for n in (3, 10, 50):
        for s in (0.5, 1.0, 2.0):
            cfg = SphereConfig(n=n)
            want = sphere_charfun_quad(cfg, s)
            est = sphere_charfun_mc(cfg, s, 20_000, RngStream(40 + n))
            assert abs(est.estimate - want) <= 3.5 * est.stderr, (n, s)


def test_high_dimension_approaches_gaussian():
    gap = abs(sphere_charfun_quad(SphereConfig(n=200), 1.0) - gaussian_charfun(1.0))
    assert gap < 0.01


def test_mc_vector_is_rotation_invariant():
    cfg = SphereConfig(n=4)
    s_vec = np.array([0.6, -0.8, 0.0, 0.0])   # |s| = 1
    est = sphere_charfun_mc_vector(cfg, s_vec, 40_000, RngStream(44))
    want = sphere_charfun_quad(cfg, 1.0)
    assert abs(est.estimate - want) <= 4.0 * est.stderr
    with pytest.raises(DomainError):
        sphere_charfun_mc_vector(cfg, np.array([1.0, 2.0]), 100, RngStream(0))


def test_mc_charfun_validation():
    with pytest.raises(DomainError):
        sphere_charfun_mc(SphereConfig(n=3), -1.0, 100, RngStream(0))
    with pytest.raises(DomainError):
        sphere_charfun_quad(SphereConfig(n=3), float("nan"))


def test_convergence_table_shrinks_like_one_over_n():
    rows = mp_convergence_table()
    gaps = np.array([row["sup_gap"] for row in rows])
    ns = np.array([row["n"] for row in rows])
    assert np.all(np.diff(gaps) < 0.0)
    assert gaps[ns == 100][0] <= 0.02
    slope = np.polyfit(np.log(ns), np.log(gaps), 1)[0]
    assert -1.4 < slope < -0.6


def test_convergence_table_validation():
    with pytest.raises(DomainError):
        mp_convergence_table(s_grid=np.array([-1.0, 0.5]))


def test_gap_rows_schema_and_determinism():
    s_grid = np.array([0.5, 1.5])
    rows = charfun_gap_rows(s_grid, [3, 10])
    assert len(rows) == 4
    for row in rows:
        assert list(row.keys()) == ["n", "s", "quad", "mc", "stderr", "gauss", "gap"]
        assert row["mc"] is None and row["stderr"] is None
        assert row["gap"] == pytest.approx(abs(row["quad"] - row["gauss"]), abs=1e-15)

    a = charfun_gap_rows(s_grid, [3], samples=5_000, rng=RngStream(7))
    b = charfun_gap_rows(s_grid, [3], samples=5_000, rng=RngStream(7))
    assert a == b
    assert all(row["mc"] is not None and row["stderr"] > 0.0 for row in a)
    with pytest.raises(DomainError):
        charfun_gap_rows(s_grid, [3], samples=100, rng=None)
