from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from mfill.lp import LPInfeasible, LPUnbounded, simplex_exact, solve_linear_exact, solve_lp


def _exact_feasible(A_ub, b_ub, A_eq, b_eq, x):
    assert all(v >= 0 for v in x)
    for row, b in zip(A_ub, b_ub):
        assert sum(Fraction(a) * v for a, v in zip(row, x)) <= b
    for row, b in zip(A_eq, b_eq):
        assert sum(Fraction(a) * v for a, v in zip(row, x)) == b


def test_textbook_lp_exact():
    # max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
    A = [[1, 0], [0, 2], [3, 2]]
    b = [4, 12, 18]
    sol = solve_lp([-3, -5], A_ub=np.array(A, dtype=float), b_ub=b, exact=True)
    assert sol.exact
    assert sol.value_exact == -36
    assert sol.x_exact == [2, 6]
    # dual certificate reproduces the primal value exactly
    dual = sum(Fraction(bi) * ui for bi, ui in zip(b, sol.ub_duals_exact))
    assert dual == sol.value_exact


def test_fractional_optimum_is_recovered_exactly():
    # min x + y s.t. 3x + y >= 1, x + 3y >= 1  ->  x = y = 1/4
    A = np.array([[-3, -1], [-1, -3]], dtype=float)
    sol = solve_lp([1, 1], A_ub=A, b_ub=[-1, -1], exact=True)
    assert sol.value_exact == Fraction(1, 2)
    assert sol.x_exact == [Fraction(1, 4), Fraction(1, 4)]


def test_infeasible_and_unbounded():
    with pytest.raises(LPInfeasible):
        solve_lp([1], A_ub=np.array([[1.0]]), b_ub=[-1])
    with pytest.raises(LPUnbounded):
        solve_lp([-1], A_ub=np.array([[-1.0]]), b_ub=[0])


def test_rational_simplex_direct():
    rows_ub = [[(0, Fraction(1)), (1, Fraction(1))]]
    rows_eq = [[(0, Fraction(1)), (1, Fraction(-1))]]
    ex = simplex_exact([Fraction(-1), Fraction(-2)], rows_ub, [Fraction(3)], rows_eq, [Fraction(1)], 2)
    assert ex.value == Fraction(-4)
    assert ex.x == [Fraction(2), Fraction(1)]


def test_solve_linear_exact():
    rows = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    assert solve_linear_exact(rows, [Fraction(3), Fraction(4)], 2) == [1, 1]
    assert solve_linear_exact([[Fraction(1)], [Fraction(1)]], [Fraction(1), Fraction(2)], 1) is None


@st.composite
def small_lps(draw):
    n = draw(st.integers(2, 5))
    m = draw(st.integers(1, 5))
    ints = st.integers(-4, 6)
    A = [[draw(ints) for _ in range(n)] for _ in range(m)]
    x0 = [draw(st.integers(0, 3)) for _ in range(n)]
    # b chosen so that x0 is feasible
    b = [sum(a * x for a, x in zip(row, x0)) + draw(st.integers(0, 4)) for row in A]
    c = [draw(st.integers(0, 5)) for _ in range(n)]
    # cost nonnegative keeps the problem bounded
    return c, A, b


@given(small_lps())
def test_matches_scipy_and_certifies(lp):
    c, A, b = lp
    ref = linprog(c, A_ub=A, b_ub=b, method="highs")
    sol = solve_lp(c, A_ub=np.array(A, dtype=float), b_ub=b, exact=True)
    assert abs(sol.value - ref.fun) <= 1e-9
    assert sol.exact
    _exact_feasible(A, b, [], [], sol.x_exact)
    assert abs(float(sol.value_exact) - ref.fun) <= 1e-9
    dual = sum(Fraction(bi) * ui for bi, ui in zip(b, sol.ub_duals_exact))
    assert dual == sol.value_exact
    assert sol.duality_gap <= 1e-9
