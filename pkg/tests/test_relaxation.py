import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_force_sparse_max
from rspca.linalg import covariance
from rspca.relaxation import SolverConfig, project_feasible, solve_relaxed


def grid_best_threshold_value(v, budget, step=1e-6):
    """Grid-search oracle: best <v, w> over soft thresholds at the given step.

    Scans S(v, t)/||S(v, t)||_2 for t on a uniform grid and keeps the best
    feasible candidate.
    """
    v = np.asarray(v, dtype=np.float64)
    thresholds = np.arange(0.0, np.abs(v).max() + step, step)
    S = np.maximum(np.abs(v)[None, :] - thresholds[:, None], 0.0)
    norms = np.linalg.norm(S, axis=1)
    ok = norms > 0.0
    ok[ok] &= S[ok].sum(axis=1) <= budget * (1.0 + 1e-9) * norms[ok]
    if not np.any(ok):
        return -np.inf
    gains = S[ok] @ np.abs(v) / norms[ok]
    return float(gains.max())


def assert_feasible(w, budget):
    assert np.linalg.norm(w) <= 1.0 + 1e-10
    assert np.abs(w).sum() <= budget + 1e-10


def test_project_single_nonzero_clips_to_unit():
    w = project_feasible(np.array([3.0, 0.0, 0.0]), 1.0)
    np.testing.assert_array_equal(w, [1.0, 0.0, 0.0])


def test_project_slack_budget_only_normalizes():
    w = project_feasible(np.array([1.0, 1.0]), 2.0)
    np.testing.assert_allclose(w, [1.0 / np.sqrt(2.0)] * 2, rtol=1e-15)


def test_project_tight_budget_drops_small_entry():
    w = project_feasible(np.array([2.0, 1.0]), 1.0)
    np.testing.assert_array_equal(w, [1.0, 0.0])


def test_project_matches_grid_search_oracle():
    v = np.array([2.0, 1.0])
    w = project_feasible(v, 1.0)
    assert float(v @ w) >= grid_best_threshold_value(v, 1.0) - 1e-6


def test_project_beats_grid_on_random_inputs():
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = int(rng.integers(2, 9))
        v = rng.normal(size=n) * 10.0
        budget = float(np.sqrt(rng.integers(1, n + 1)))
        w = project_feasible(v, budget)
        assert_feasible(w, budget)
        # coarse grid: the closed form must never lose to any grid candidate
        assert float(v @ w) >= grid_best_threshold_value(v, budget, 1e-4) - 1e-8


def test_project_preserves_signs_and_order():
    v = np.array([-5.0, 3.0, -1.0, 0.5])
    w = project_feasible(v, 1.2)
    assert_feasible(w, 1.2)
    nz = w != 0.0
    assert np.all(np.sign(w[nz]) == np.sign(v[nz]))
    # larger magnitudes in v never get smaller weights in w
    order = np.argsort(-np.abs(v))
    mags = np.abs(w[order])
    assert np.all(np.diff(mags) <= 1e-12)


def test_project_exact_ties_stay_feasible():
    # all entries tied: a naive uniform spread would blow the l1 budget
    v = np.ones(6)
    budget = np.sqrt(3.0)
    w = project_feasible(v, budget)
    assert_feasible(w, budget)
    # the tied face attains <v, w> = budget exactly
    np.testing.assert_allclose(float(v @ w), budget, rtol=1e-12)


def test_project_near_ties_stay_feasible():
    v = 3.0 + np.arange(6) * 1e-10
    budget = np.sqrt(2.0)
    w = project_feasible(v, budget)
    assert_feasible(w, budget)
    assert float(v @ w) >= grid_best_threshold_value(v, budget, 1e-4) - 1e-8


def test_project_integer_budget_on_ties_keeps_square_count():
    # budget = sqrt(4): four tied coordinates fit exactly at uniform weight
    v = np.ones(8)
    w = project_feasible(v, 2.0)
    assert_feasible(w, 2.0)
    np.testing.assert_allclose(float(v @ w), 2.0, rtol=1e-12)
    assert np.count_nonzero(w) == 4


def test_project_zero_vector_returns_zero():
    np.testing.assert_array_equal(project_feasible(np.zeros(4), 1.5), np.zeros(4))


def test_project_budget_below_one_rejected():
    with pytest.raises(ValueError):
        project_feasible(np.ones(3), 0.5)


@settings(max_examples=150, deadline=None)
@given(
    st.lists(
        st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False),
        min_size=1,
        max_size=10,
    ),
    st.integers(1, 10),
)
def test_project_feasibility_property(values, k):
    v = np.array(values)
    budget = float(np.sqrt(k))
    w = project_feasible(v, budget)
    assert_feasible(w, budget)
    if np.any(v):
        # never worse than the best single coordinate
        assert float(v @ w) >= np.abs(v).max() * (1.0 - 1e-12)


def test_solver_rank_one_matrix():
    A = covariance(np.array([[1.0, 0.0, 0.0]]))
    d = solve_relaxed(A, 1)
    assert d.objective == pytest.approx(1.0, abs=1e-10)
    np.testing.assert_allclose(np.abs(d.x), [1.0, 0.0, 0.0], atol=1e-10)
    assert d.converged


def test_solver_inactive_constraint_reaches_top_eigenvalue():
    A = covariance(np.eye(2))
    d = solve_relaxed(A, 2)
    assert d.objective == pytest.approx(A.spectral_norm(), abs=1e-8)


def test_solver_k_equals_n_matches_spectral_norm():
    A = covariance(np.random.default_rng(11).normal(size=(9, 6)))
    d = solve_relaxed(A, 6)
    lam = np.linalg.eigvalsh(A.matrix)[-1]
    assert d.objective == pytest.approx(lam, abs=1e-8)


def test_solver_dominates_enumeration_oracle_20_seeds():
    for sd in range(20):
        rng = np.random.default_rng(900 + sd)
        A = covariance(rng.normal(size=(15, 10)))
        d = solve_relaxed(A, 3, SolverConfig(seed=sd))
        z_opt, _ = brute_force_sparse_max(A, 3)
        assert d.objective >= z_opt - 1e-8, f"seed {sd}: {d.objective} < {z_opt}"


def test_solver_iterate_is_feasible():
    rng = np.random.default_rng(12)
    A = covariance(rng.normal(size=(10, 8)))
    for k in (1, 2, 5, 8):
        d = solve_relaxed(A, k)
        assert_feasible(d.x, np.sqrt(k))


def test_solver_objective_matches_iterate():
    rng = np.random.default_rng(13)
    A = covariance(rng.normal(size=(8, 7)))
    d = solve_relaxed(A, 2)
    assert d.objective == pytest.approx(float(d.x @ A.matrix @ d.x), rel=1e-12)


def test_solver_zero_matrix():
    A = covariance(np.zeros((3, 3)))
    d = solve_relaxed(A, 2)
    np.testing.assert_array_equal(d.x, np.zeros(3))
    assert d.objective == 0.0
    assert d.converged


def test_solver_deterministic_given_seed():
    rng = np.random.default_rng(14)
    A = covariance(rng.normal(size=(9, 7)))
    cfg = SolverConfig(seed=5)
    d1 = solve_relaxed(A, 3, cfg)
    d2 = solve_relaxed(A, 3, SolverConfig(seed=5))
    np.testing.assert_array_equal(d1.x, d2.x)
    assert d1.objective == d2.objective
    assert d1.iterations == d2.iterations


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(max_iter=0)
    with pytest.raises(ValueError):
        SolverConfig(tol=0.0)
    with pytest.raises(ValueError):
        SolverConfig(restarts=0)


def test_solver_k_validation():
    A = covariance(np.eye(3))
    with pytest.raises(ValueError):
        solve_relaxed(A, 0)
