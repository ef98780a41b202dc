import io

import numpy as np
import pytest

from hedonic.errors import GameError, NumericalSingularity
from hedonic.lp import (
    EQ,
    GE,
    LE,
    LinearProgram,
    LpStatus,
    check_feasible_equalities,
    solve_least_squares,
    solve_lp,
)

from oracles import boxed_oracle, pinv_lls


def random_program(rng, nv=None, m=None):
    nv = nv or int(rng.integers(1, 4))
    m = m or int(rng.integers(1, 7))
    c = rng.integers(-3, 4, nv).astype(float)
    A = rng.integers(-3, 4, (m, nv)).astype(float)
    b = rng.integers(-5, 6, m).astype(float)
    senses = list(rng.choice([LE, LE, LE, GE, EQ], m))
    return LinearProgram(c, A, senses, b)


def classify(lp):
    """Oracle status via two nested boxes: a bounded optimum does not move with the box."""
    small = boxed_oracle(lp.objective, lp.A, lp.senses, lp.rhs, 1e3)
    if small is None:
        return "infeasible", None
    big = boxed_oracle(lp.objective, lp.A, lp.senses, lp.rhs, 1e4)
    if big[0] > small[0] + 1e-6:
        return "unbounded", None
    return "optimal", small[0]


def test_trivial_programs():
    sol = solve_lp(LinearProgram.build([1.0], A_ub=[[1.0]], b_ub=[3.0]))
    assert sol.status is LpStatus.OPTIMAL and sol.point == pytest.approx([3.0])
    sol = solve_lp(LinearProgram.build([1.0], A_ub=[[1.0]], b_ub=[0.0], A_ge=[[1.0]], b_ge=[1.0]))
    assert sol.status is LpStatus.INFEASIBLE
    sol = solve_lp(LinearProgram.build([1.0, 0.0], A_ub=[[0.0, 1.0]], b_ub=[1.0]))
    assert sol.status is LpStatus.UNBOUNDED


def test_free_variables_go_negative():
    sol = solve_lp(LinearProgram.build([1.0], A_ub=[[1.0]], b_ub=[-2.5]))
    assert sol.optimal and sol.point == pytest.approx([-2.5])


def test_redundant_equalities():
    sol = solve_lp(LinearProgram.build([1.0, 1.0], A_eq=[[1, 1], [2, 2]], b_eq=[1, 2], A_ub=[[1, 0]], b_ub=[5]))
    assert sol.optimal and sol.objective == pytest.approx(1.0)


@pytest.mark.parametrize("seed", range(200))
def test_small_programs_match_vertex_enumeration(seed):
    rng = np.random.default_rng(seed)
    lp = random_program(rng)
    status, value = classify(lp)
    sol = solve_lp(lp)
    assert sol.status.value == status
    if status == "optimal":
        assert sol.objective == pytest.approx(value, abs=1e-6)
        assert sol.max_violation <= 1e-7


@pytest.mark.parametrize("seed", range(100))
def test_weak_duality(seed):
    rng = np.random.default_rng(1000 + seed)
    lp = random_program(rng, nv=int(rng.integers(1, 5)), m=int(rng.integers(2, 8)))
    primal = solve_lp(lp)
    dual = solve_lp(lp.dual())
    if primal.optimal and dual.optimal:
        assert primal.objective <= -dual.objective + 1e-6
        assert primal.objective == pytest.approx(-dual.objective, abs=1e-6)
    if primal.status is LpStatus.UNBOUNDED:
        assert dual.status is LpStatus.INFEASIBLE


def test_determinism_and_debug_dump():
    rng = np.random.default_rng(7)
    lp = random_program(rng, nv=3, m=6)
    a, b = io.StringIO(), io.StringIO()
    s1 = solve_lp(lp, debug=a)
    s2 = solve_lp(lp, debug=b)
    assert a.getvalue() == b.getvalue()
    assert s1.status == s2.status and s1.iterations == s2.iterations
    if s1.point is not None:
        assert np.array_equal(s1.point, s2.point)
    for line in a.getvalue().splitlines():
        it, enter, leave, obj = line.split(",")
        int(it), int(enter), int(leave), float(obj)


def test_iteration_cap_reports_numerical_failure():
    lp = LinearProgram.build([1.0, 1.0], A_ub=[[1, 0], [0, 1]], b_ub=[1, 1])
    assert solve_lp(lp, max_iter=1).status is LpStatus.NUMERICAL_FAILURE


def test_malformed_programs():
    with pytest.raises(GameError):
        LinearProgram([1.0], [[1.0]], ["<"], [1.0])
    with pytest.raises(GameError):
        LinearProgram([1.0], [[np.inf]], [LE], [1.0])


def test_equality_feasibility():
    x = check_feasible_equalities([[2.0, 1.0], [1.0, 3.0]], [3.0, 5.0])
    assert x == pytest.approx(np.linalg.solve([[2.0, 1.0], [1.0, 3.0]], [3.0, 5.0]))
    assert check_feasible_equalities([[1.0], [1.0]], [0.0, 1.0]) is None


def test_least_squares_basics():
    b = np.array([0.3, -1.0, 2.0])
    x, r = solve_least_squares(np.eye(3), b)
    assert x == pytest.approx(b) and r == pytest.approx(0.0, abs=1e-12)
    x, r = solve_least_squares([[1.0], [1.0]], [0.0, 2.0])
    assert x == pytest.approx([1.0]) and r == pytest.approx(np.sqrt(2))
    with pytest.raises(NumericalSingularity):
        solve_least_squares([[1.0, 1.0], [1.0, 1.0]], [1.0, 2.0])


@pytest.mark.parametrize("seed", range(30))
def test_least_squares_matches_pinv(seed):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(int(rng.integers(4, 12)), 3))
    b = rng.normal(size=A.shape[0])
    x, r = solve_least_squares(A, b)
    xo, ro = pinv_lls(A, b)
    assert np.max(np.abs(x - xo)) <= 1e-9 and abs(r - ro) <= 1e-9
