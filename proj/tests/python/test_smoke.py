import math

import simdiag


def test_orthogonal_solve_reaches_floor():
    prob = simdiag.random_orthogonal_problem(d=8, k=8, L=5, eps=0.0, seed=11)
    result = simdiag.solve(prob["matrices"])
    assert result["converged"]
    assert result["objective_trace"][-1] < 1e-10
    rep = simdiag.align_factors(prob["U"], result["U_est"], mode="sign")
    assert rep["max_error"] < 1e-7


def test_low_rank_sorted_solve():
    prob = simdiag.random_orthogonal_problem(d=10, k=3, L=6, eps=0.0, seed=3)
    result = simdiag.solve(prob["matrices"], rank=3)
    rep = simdiag.align_factors(prob["U"], result["U_est"], mode="sign")
    assert rep["max_error"] < 1e-6


def test_shear_solver_on_nonorthogonal_problem():
    prob = simdiag.random_nonorthogonal_problem(d=5, k=5, L=8, eps=0.0,
                                                cond=4.0, seed=7)
    result = simdiag.solve(prob["matrices"], method="qrj1d", tol=1e-18)
    assert result["objective_trace"][-1] < 1e-16
    rep = simdiag.align_factors(prob["U"], result["U_est"], mode="scale")
    assert rep["max_error"] < 1e-6


def test_asymmetric_recovery():
    prob = simdiag.random_asymmetric_problem(d1=7, d2=9, k=3, L=6, eps=0.0,
                                             cond=1.0, seed=5)
    result = simdiag.asym_solve(prob["matrices"], rank=3)
    for key, truth in (("U_est", prob["U"]), ("V_est", prob["V"])):
        rep = simdiag.align_factors(truth, result[key], mode="sign")
        assert rep["max_error"] < 1e-6


def test_off_norm_matches_objective():
    mats = [[[1.0, 0.5], [0.5, 2.0]], [[0.0, -0.25], [-0.25, 1.0]]]
    obj = simdiag.off_objective(mats)
    assert math.isclose(obj, 2 * 0.5**2 + 2 * 0.25**2, rel_tol=1e-15)
    assert math.isclose(simdiag.off_norm(mats), math.sqrt(obj), rel_tol=1e-15)
