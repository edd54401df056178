import math

import numpy as np
import pytest

from conicpd import (
    DivergenceTable,
    DomainError,
    F_contour,
    F_direct,
    L_limit_study,
    RadiusSchedule,
    SaddleSolution,
    bessel_k0,
    digamma,
    divergence_experiment,
    find_L_zero,
    log_F_contour,
    solve_saddle,
)
from conicpd.mellin import D_n, log_D_n, rho_geometric_mean

EULER_GAMMA = 0.5772156649015328606065

# gamma solving psi(gamma) = log(lam), and the rate L = logGamma(gamma)
# - gamma log(lam), frozen from a 30-digit computation
SADDLE_ANCHORS = {
    0.5: (0.9330126182815945759134, 0.6891980835604352609709),
    1.0: (1.461632144968362341263, -0.1214862905358496080955),
    2.0: (2.479687450428178690538, -1.448286906323816427336),
    0.001: (0.1525133006356880646248, 2.863835534263775938008),
    1000.0: (1000.499958333338020831, -1002.534980772951499951),
}

# independently integrated contour values, 22 digits
F_ANCHORS = {
    (2, 0.5): 0.8420488764814166666713,
    (2, 1.0): 0.2277877454990668713054,
    (2, 2.0): 0.02231935217170604853949,
    (3, 0.5): 1.362710108013438627259,
    (3, 1.0): 0.1640416067483760731514,
    (4, 1.0): 0.1255485133415357307226,
}

TABLE_COLUMNS = ["n", "lambda", "r", "gamma", "L", "lnFn_over_n", "gap"]


# --------------------------------------------------------------------- saddle

def test_solve_saddle_anchors():
    for lam, (gamma, L) in SADDLE_ANCHORS.items():
        sol = solve_saddle(lam)
        assert sol.gamma == pytest.approx(gamma, rel=1e-12)
        assert sol.L_value == pytest.approx(L, rel=1e-11)
        assert sol.ratio_form == pytest.approx(math.exp(L), rel=1e-11)


def test_solve_saddle_curvature_at_one():
    sol = solve_saddle(1.0)
    assert sol.curvature == pytest.approx(0.9676722454476211704274, rel=1e-12)


def test_solve_saddle_known_integer_point():
    # lambda = exp(psi(2)) puts the saddle exactly at 2
    lam = 1.526205111595863880475
    sol = solve_saddle(lam)
    assert sol.gamma == pytest.approx(2.0, abs=1e-12)
    assert sol.L_value == pytest.approx(-0.845568670196934278787, rel=1e-12)


def test_solve_saddle_residual_over_log_grid():
    for lam in np.geomspace(1e-3, 1e3, 25):
        sol = solve_saddle(float(lam))
        assert abs(digamma(sol.gamma) - math.log(lam)) <= 1e-13


def test_saddle_gamma_increases_with_lambda():
    gammas = [solve_saddle(float(lam)).gamma for lam in np.geomspace(0.01, 100, 15)]
    assert np.all(np.diff(gammas) > 0.0)


def test_saddle_solution_validation():
    with pytest.raises(DomainError):
        SaddleSolution(lam=1.0, gamma=2.0, L_value=0.0, curvature=1.0)
    good = solve_saddle(1.0)
    with pytest.raises(DomainError):
        SaddleSolution(lam=1.0, gamma=good.gamma, L_value=good.L_value, curvature=-1.0)
    with pytest.raises(DomainError):
        solve_saddle(0.0)
    with pytest.raises(DomainError):
        solve_saddle(-2.0)
    with pytest.raises(DomainError):
        solve_saddle(float("nan"))


# -------------------------------------------------------------- contour route

def test_contour_n_equal_one_inverts_to_exponential():
    for lam in (0.3, 1.0, 2.5):
        assert F_contour(1, lam) == pytest.approx(math.exp(-lam), rel=1e-10)


def test_contour_anchors():
    for (n, lam), want in F_ANCHORS.items():
        assert F_contour(n, lam) == pytest.approx(want, rel=1e-10), (n, lam)


def test_contour_two_atom_case_is_bessel():
    # F_2(lam) = 2 K_0(2 lam), checked off the anchor grid as well
    for lam in (0.35, 0.8, 1.7, 3.0):
        assert F_contour(2, lam) == pytest.approx(
            2.0 * bessel_k0(2.0 * lam), rel=1e-9)


def test_contour_independent_of_abscissa():
    for n, lam in ((2, 1.0), (3, 0.5), (5, 2.0)):
        gamma = solve_saddle(lam).gamma
        base = log_F_contour(n, lam)
        for factor in (0.8, 1.0, 1.2, 1.5):
            shifted = log_F_contour(n, lam, abscissa=factor * gamma)
            assert shifted == pytest.approx(base, abs=1e-8), (n, lam, factor)


def test_contour_handles_large_n_without_overflow():
    # n L(2) ~ -87 at n = 60: the log route must stay finite.  The value
    # sits below n L by the ~2.6 half-log correction at this n.
    val = log_F_contour(60, 2.0)
    assert math.isfinite(val)
    assert val == pytest.approx(60 * SADDLE_ANCHORS[2.0][1], abs=3.5)


def test_contour_validation():
    with pytest.raises(DomainError):
        F_contour(0, 1.0)
    with pytest.raises(DomainError):
        F_contour(2, -1.0)
    with pytest.raises(DomainError):
        log_F_contour(2, 1.0, abscissa=-0.3)


# --------------------------------------------------------------- direct route

def test_direct_n_equal_one():
    for lam in (0.5, 1.0, 2.0):
        assert F_direct(1, lam) == math.exp(-lam)


def test_direct_matches_contour():
    for n in (2, 3, 4):
        for lam in (0.5, 1.0, 2.0):
            if n == 4 and lam != 1.0:
                continue  # n=4 grid is heavy; one lambda exercises the path
            direct = F_direct(n, lam)
            contour = F_contour(n, lam)
            assert direct == pytest.approx(contour, rel=1e-8), (n, lam)


def test_direct_decreasing_in_lambda():
    values = [F_direct(3, lam) for lam in (0.5, 1.0, 2.0)]
    assert values[0] > values[1] > values[2] > 0.0


def test_direct_validation():
    with pytest.raises(DomainError):
        F_direct(5, 1.0)
    with pytest.raises(DomainError):
        F_direct(0, 1.0)
    with pytest.raises(DomainError):
        F_direct(2, 0.0)


# ----------------------------------------------------------------- rate limit

def test_limit_study_structure_and_convergence():
    study = L_limit_study(1.0, n_max=24)
    sol = study.saddle
    assert study.ns[0] == 2 and study.ns[-1] == 24

    # raw ratios sit below L by the 1/2 log(2 pi n psi')/n correction,
    # shrinking in magnitude
    assert np.all(study.gaps < 0.0)
    tail = np.abs(study.gaps[study.ns >= 5])
    assert np.all(np.diff(tail) < 0.0)

    # the corrected column removes the leading term...
    assert abs(study.corrected[-1] - sol.L_value) <= 0.01
    # ...and the fitted extrapolation lands much closer still
    assert abs(study.extrapolated_gap) <= 2e-3
    assert study.extrapolated_limit == pytest.approx(
        sol.L_value + study.extrapolated_gap, rel=1e-12)

    # envelope constant C with |gap_n| <= C log n / n over the table
    logs = np.log(study.ns)
    assert np.all(np.abs(study.gaps) <= study.envelope_constant * logs / study.ns + 1e-12)


def test_limit_study_rows_schema():
    study = L_limit_study(0.5, n_max=6)
    rows = study.rows()
    assert len(rows) == 5
    for row in rows:
        assert list(row.keys()) == TABLE_COLUMNS
        assert row["r"] == 1.0 and row["lambda"] == 0.5
        assert row["gap"] == pytest.approx(row["lnFn_over_n"] - row["L"], abs=1e-15)


def test_limit_study_validation():
    with pytest.raises(DomainError):
        L_limit_study(1.0, n_max=70)
    with pytest.raises(DomainError):
        L_limit_study(1.0, n_max=4, n_min=5)
    with pytest.raises(DomainError):
        L_limit_study(1.0, n_max=10, n_min=1)


# ------------------------------------------------------------------ L profile

def test_L_is_strictly_decreasing():
    grid = np.geomspace(0.05, 20.0, 30)
    L_vals = np.array([solve_saddle(float(lam)).L_value for lam in grid])
    assert np.all(np.diff(L_vals) < 0.0)


def test_find_L_zero():
    zero = find_L_zero()
    assert zero == pytest.approx(0.9179235347379753136428, abs=1e-10)
    assert abs(solve_saddle(zero).L_value) <= 1e-11


def test_L_crossing_sits_left_of_log_crossing():
    # -log(lam) crosses zero at 1; the rate L crosses earlier, and the two
    # curves agree exactly at lam = exp(-euler_gamma) where the saddle is 1
    assert find_L_zero() < 1.0
    sol = solve_saddle(math.exp(-EULER_GAMMA))
    assert sol.gamma == pytest.approx(1.0, abs=1e-12)
    assert sol.L_value == pytest.approx(EULER_GAMMA, rel=1e-12)


def test_find_L_zero_rejects_bad_bracket():
    with pytest.raises(DomainError):
        find_L_zero(2.0, 3.0)


# ------------------------------------------------------------- normalizations

def test_rho_geometric_mean():
    assert rho_geometric_mean([2.0, 0.5]) == pytest.approx(1.0, rel=1e-14)
    assert rho_geometric_mean([3.0, 3.0, 3.0]) == pytest.approx(3.0, rel=1e-14)
    assert rho_geometric_mean([1.0, 2.0, 4.0]) == pytest.approx(2.0, rel=1e-14)
    with pytest.raises(DomainError):
        rho_geometric_mean([1.0, -2.0])
    with pytest.raises(DomainError):
        rho_geometric_mean(np.ones((2, 2)))
    with pytest.raises(DomainError):
        rho_geometric_mean([])


def test_candidate_normalization_reduces_to_F():
    for n, lam in ((3, 1.0), (2, 0.5)):
        assert log_D_n(np.full(n, lam), 1.0, n) == log_F_contour(n, lam)


def test_candidate_normalization_scale_covariance():
    values = np.array([0.5, 1.0, 2.0])
    c, r = 1.7, 0.8
    assert D_n(c * values, r, 3) == pytest.approx(D_n(values, c * r, 3), rel=1e-12)


def test_candidate_normalization_single_value():
    assert D_n(np.array([2.0]), 1.5, 1) == pytest.approx(math.exp(-3.0), rel=1e-10)


def test_candidate_normalization_validation():
    with pytest.raises(DomainError):
        log_D_n(np.ones(3), 1.0, 4)
    with pytest.raises(DomainError):
        log_D_n(np.ones(2), -1.0, 2)


# ------------------------------------------------------- divergence behaviour

def test_divergence_constant_schedule_tracks_nonzero_rate():
    ns = np.arange(2, 13)
    for lam in (0.5, 2.0):
        table = divergence_experiment(lam, RadiusSchedule("constant"), ns=ns)
        L = SADDLE_ANCHORS[lam][1]
        assert np.allclose(table.limits, L, rtol=1e-10)
        # the per-n rate closes in on the nonzero limit (the residual
        # half-log correction is ~0.2 at n=12)
        assert abs(table.rates[-1] - L) < abs(table.rates[0] - L)
        assert abs(table.rates[-1] - L) < 0.25
    # L(2) < 0 drives D_n to zero; L(0.5) > 0 drives it to infinity
    low = divergence_experiment(2.0, RadiusSchedule("constant"), ns=ns)
    high = divergence_experiment(0.5, RadiusSchedule("constant"), ns=ns)
    assert low.rates[-1] < -1.0
    assert high.rates[-1] > 0.3


def test_divergence_growing_radius_sends_rate_down():
    table = divergence_experiment(1.0, RadiusSchedule("sqrt_n"), ns=np.arange(2, 13))
    assert np.all(np.diff(table.limits) < 0.0)
    assert table.limits[-1] < table.limits[0] - 1.0
    assert table.rates[-1] < table.rates[0] - 1.0


def test_divergence_rows_schema_and_custom_schedule():
    schedule = RadiusSchedule("custom", fn=lambda n: 1.0 + 0.1 * n)
    table = divergence_experiment(1.0, schedule, ns=np.array([2, 4, 8]))
    assert isinstance(table, DivergenceTable)
    rows = table.rows()
    assert [row["n"] for row in rows] == [2, 4, 8]
    for row, r in zip(rows, (1.2, 1.4, 1.8)):
        assert list(row.keys()) == TABLE_COLUMNS
        assert row["r"] == pytest.approx(r, rel=1e-14)


def test_radius_schedule_validation():
    with pytest.raises(DomainError):
        RadiusSchedule("linear")
    with pytest.raises(DomainError):
        RadiusSchedule("constant", scale=-1.0)
    with pytest.raises(DomainError):
        RadiusSchedule("custom")
    bad = RadiusSchedule("custom", fn=lambda n: -n)
    with pytest.raises(DomainError):
        bad.radius(3)
    with pytest.raises(DomainError):
        divergence_experiment(1.0, RadiusSchedule("constant"), ns=np.array([0, 2]))
