"""
Linear programs with exact rational optimality certificates.

Problems are solved in floating point with HiGHS and then, on request,
snapped to rationals and re-verified with :class:`fractions.Fraction`
arithmetic: primal feasibility, dual feasibility and equality of the two
objectives together prove that the rational point is an exact optimum.
When snapping fails on a small problem, a dense rational simplex
(:func:`simplex_exact`) is used instead.

All problems are in the form::

    minimize    c @ x
    subject to  A_ub @ x <= b_ub
                A_eq @ x == b_eq
                x >= 0
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy import sparse
from scipy.optimize import linprog


class LPError(Exception):
    """Base class for LP failures."""


class LPInfeasible(LPError):
    """The constraints admit no solution."""


class LPUnbounded(LPError):
    """The objective is unbounded below."""


@dataclass
class LPSolution:
    x: np.ndarray
    value: float
    eq_duals: np.ndarray
    ub_duals: np.ndarray
    exact: bool = False
    x_exact: Optional[list] = None
    value_exact: Optional[Fraction] = None
    eq_duals_exact: Optional[list] = None
    ub_duals_exact: Optional[list] = None
    dual_value: float = math.nan
    method: str = "highs"
    notes: list = field(default_factory=list)

    @property
    def duality_gap(self) -> float:
        return abs(self.value - self.dual_value)


# dense rational simplex above this many tableau entries is not attempted
EXACT_SIMPLEX_LIMIT = 60_000


def _to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, np.integer)):
        return Fraction(int(v))
    return Fraction(float(v))


def _rows_exact(A, n):
    """Return the matrix as a list of sparse rows ``[(col, Fraction), ...]``."""
    if A is None:
        return []
    if sparse.issparse(A):
        A = A.tocsr()
        rows = []
        for i in range(A.shape[0]):
            lo, hi = A.indptr[i], A.indptr[i + 1]
            rows.append([(int(j), _to_fraction(v))
                         for j, v in zip(A.indices[lo:hi], A.data[lo:hi]) if v != 0])
        return rows
    A = np.asarray(A, dtype=object) if not isinstance(A, np.ndarray) else A
    rows = []
    for i in range(A.shape[0]):
        rows.append([(j, _to_fraction(A[i, j])) for j in range(n) if A[i, j] != 0])
    return rows


def _as_float(A):
    if A is None:
        return None
    if sparse.issparse(A):
        return A.astype(float)
    return np.array(A, dtype=float)


def _snap(values, den: int) -> Optional[list]:
    """Round floats to rationals with denominators at most ``den``."""
    cand = []
    for v in values:
        v = float(v)
        q = Fraction(v).limit_denominator(den)
        if abs(float(q) - v) > 1e-7 * max(1.0, abs(v)):
            return None
        cand.append(q)
    return cand


def _lcm_denominator(values) -> int:
    den = 1
    for v in values:
        den = math.lcm(den, _to_fraction(v).denominator)
    return den


def _dot(row, vec):
    return sum((a * vec[j] for j, a in row), Fraction(0))


def _certify(c, rows_ub, b_ub, rows_eq, b_eq, x, u, y) -> bool:
    """Check an exact primal/dual pair for optimality."""
    if any(v < 0 for v in x):
        return False
    for row, b in zip(rows_eq, b_eq):
        if _dot(row, x) != b:
            return False
    for row, b in zip(rows_ub, b_ub):
        if _dot(row, x) > b:
            return False
    if any(v > 0 for v in u):
        return False
    reduced = list(c)
    for row, yi in zip(rows_eq, y):
        if yi:
            for j, a in row:
                reduced[j] -= a * yi
    for row, ui in zip(rows_ub, u):
        if ui:
            for j, a in row:
                reduced[j] -= a * ui
    if any(r < 0 for r in reduced):
        return False
    primal = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    dual = (sum((bi * yi for bi, yi in zip(b_eq, y)), Fraction(0))
            + sum((bi * ui for bi, ui in zip(b_ub, u)), Fraction(0)))
    return primal == dual


def solve_lp(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, *, exact=False,
             bounds=(0, None)) -> LPSolution:
    """
    Solve ``min c x`` over ``A_ub x <= b_ub, A_eq x = b_eq, x >= 0``.

    Parameters
    ----------
    c, b_ub, b_eq : sequences of int, Fraction or float
    A_ub, A_eq : dense array (possibly of Fractions) or scipy sparse matrix
    exact : bool
        Produce an exact rational optimum together with an exact dual
        certificate. Falls back to :func:`simplex_exact` for small problems.

    Raises
    ------
    LPInfeasible, LPUnbounded
    """
    n = len(c)
    c_f = np.array([float(v) for v in c])
    b_ub_f = None if b_ub is None else np.array([float(v) for v in b_ub])
    b_eq_f = None if b_eq is None else np.array([float(v) for v in b_eq])
    res = linprog(c_f, A_ub=_as_float(A_ub), b_ub=b_ub_f, A_eq=_as_float(A_eq),
                  b_eq=b_eq_f, bounds=bounds, method="highs")
    if res.status == 2:
        raise LPInfeasible(res.message)
    if res.status == 3:
        raise LPUnbounded(res.message)
    if res.status != 0:
        raise LPError(res.message)
    y = res.eqlin.marginals if b_eq is not None else np.zeros(0)
    u = res.ineqlin.marginals if b_ub is not None else np.zeros(0)
    dual_value = float((b_eq_f @ y if b_eq is not None else 0.0)
                       + (b_ub_f @ u if b_ub is not None else 0.0))
    sol = LPSolution(x=res.x, value=float(res.fun), eq_duals=y, ub_duals=u,
                     dual_value=dual_value)
    if not exact:
        return sol

    c_q = [_to_fraction(v) for v in c]
    rows_ub = _rows_exact(A_ub, n)
    rows_eq = _rows_exact(A_eq, n)
    bub_q = [] if b_ub is None else [_to_fraction(v) for v in b_ub]
    beq_q = [] if b_eq is None else [_to_fraction(v) for v in b_eq]

    data_den = _lcm_denominator(list(c_q) + bub_q + beq_q)
    dens = sorted({1, data_den, 2 * data_den, 6 * data_den, 10**4, 10**6})
    for den in dens:
        xq, uq, yq = _snap(res.x, den), _snap(u, den), _snap(y, den)
        if xq is None or uq is None or yq is None:
            continue
        if _certify(c_q, rows_ub, bub_q, rows_eq, beq_q, xq, uq, yq):
            sol.exact = True
            sol.x_exact, sol.eq_duals_exact, sol.ub_duals_exact = xq, yq, uq
            sol.value_exact = sum((a * b for a, b in zip(c_q, xq)), Fraction(0))
            sol.method = "highs+rational-certificate"
            return sol

    size = (len(rows_ub) + len(rows_eq)) * (n + 2 * len(rows_ub) + len(rows_eq))
    if size <= EXACT_SIMPLEX_LIMIT:
        rec = _active_set(c_q, rows_ub, bub_q, rows_eq, beq_q, n, res.x, u, y)
        if rec is not None:
            xq, uq, yq = rec
            sol.exact = True
            sol.x_exact, sol.eq_duals_exact, sol.ub_duals_exact = xq, yq, uq
            sol.value_exact = sum((a * b for a, b in zip(c_q, xq)), Fraction(0))
            sol.method = "highs+active-set"
            return sol
        ex = simplex_exact(c_q, rows_ub, bub_q, rows_eq, beq_q, n)
        if _certify(c_q, rows_ub, bub_q, rows_eq, beq_q, ex.x, ex.ub_duals, ex.eq_duals):
            sol.exact = True
            sol.x_exact, sol.eq_duals_exact, sol.ub_duals_exact = ex.x, ex.eq_duals, ex.ub_duals
            sol.value_exact = ex.value
            sol.method = "rational-simplex"
            return sol
    sol.notes.append("exact certificate unavailable; float solution returned")
    return sol


def solve_linear_exact(rows, rhs, nvars) -> Optional[list]:
    """
    A solution of the rational system ``rows @ x = rhs`` (free variables 0).

    ``rows`` are dense lists of Fractions. Returns None when inconsistent.
    """
    M = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(nvars):
        piv = next((i for i in range(r, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][col]
        M[r] = [v / p for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == len(M):
            break
    if any(M[i][-1] != 0 for i in range(r, len(M))):
        return None
    x = [Fraction(0)] * nvars
    for i, col in enumerate(pivots):
        x[col] = M[i][-1]
    return x


def _active_set(c, rows_ub, b_ub, rows_eq, b_eq, n, x, u, y, tol=1e-9):
    """Rebuild an exact vertex and duals from the tight constraints of a float optimum."""
    support = [j for j in range(n) if x[j] > tol]
    col = {j: k for k, j in enumerate(support)}
    tight = [i for i, (row, b) in enumerate(zip(rows_ub, b_ub))
             if abs(sum(float(a) * x[j] for j, a in row) - float(b)) <= tol * max(1.0, abs(float(b)))]
    eqs, rhs = [], []
    for row, b in list(zip(rows_eq, b_eq)) + [(rows_ub[i], b_ub[i]) for i in tight]:
        dense = [Fraction(0)] * len(support)
        for j, a in row:
            if j in col:
                dense[col[j]] += a
        eqs.append(dense)
        rhs.append(b)
    xs = solve_linear_exact(eqs, rhs, len(support))
    if xs is None:
        return None
    xq = [Fraction(0)] * n
    for j, v in zip(support, xs):
        xq[j] = v
    # duals: eq rows plus tight ub rows with nonzero multiplier
    act_ub = [i for i in tight if abs(u[i]) > tol]
    m_eq = len(rows_eq)
    dual_rows = [[Fraction(0)] * (m_eq + len(act_ub)) for _ in support]
    for i, row in enumerate(rows_eq):
        for j, a in row:
            if j in col:
                dual_rows[col[j]][i] += a
    for k, i in enumerate(act_ub):
        for j, a in rows_ub[i]:
            if j in col:
                dual_rows[col[j]][m_eq + k] += a
    ds = solve_linear_exact(dual_rows, [c[j] for j in support], m_eq + len(act_ub))
    if ds is None:
        return None
    yq = ds[:m_eq]
    uq = [Fraction(0)] * len(rows_ub)
    for k, i in enumerate(act_ub):
        uq[i] = ds[m_eq + k]
    if _certify(c, rows_ub, b_ub, rows_eq, b_eq, xq, uq, yq):
        return xq, uq, yq
    return None


@dataclass
class ExactSimplexResult:
    x: list
    value: Fraction
    eq_duals: list
    ub_duals: list


def simplex_exact(c, rows_ub, b_ub, rows_eq, b_eq, n) -> ExactSimplexResult:
    """
    Dense two-phase simplex over the rationals with Bland's rule.

    Rows are sparse lists ``[(col, Fraction), ...]``. Returns the optimal
    point and the dual multipliers of the equality and inequality rows.
    """
    m_ub, m_eq = len(rows_ub), len(rows_eq)
    m = m_ub + m_eq
    # columns: x (n), slacks (m_ub), artificials (m)
    n_tot = n + m_ub + m
    T = []
    signs = []
    for i, (row, b) in enumerate(list(zip(rows_ub, b_ub)) + list(zip(rows_eq, b_eq))):
        r = [Fraction(0)] * (n_tot + 1)
        for j, a in row:
            r[j] += a
        if i < m_ub:
            r[n + i] = Fraction(1)
        r[-1] = Fraction(b)
        s = 1
        if r[-1] < 0:
            r = [-v for v in r]
            s = -1
        r[n + m_ub + i] = Fraction(1)
        T.append(r)
        signs.append(s)
    basis = [n + m_ub + i for i in range(m)]

    def run(cost, allowed):
        # reduced-cost row: cost - c_B B^-1 A
        z = list(cost) + [Fraction(0)]
        for i, bi in enumerate(basis):
            cb = cost[bi]
            if cb:
                z = [zj - cb * tj for zj, tj in zip(z, T[i])]
        while True:
            enter = next((j for j in range(n_tot) if allowed[j] and z[j] < 0), None)
            if enter is None:
                return z
            best, leave = None, None
            for i in range(m):
                a = T[i][enter]
                if a > 0:
                    ratio = T[i][-1] / a
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                        best, leave = ratio, i
            if leave is None:
                raise LPUnbounded("rational simplex: unbounded")
            piv = T[leave][enter]
            T[leave] = [v / piv for v in T[leave]]
            for i in range(m):
                if i != leave and T[i][enter]:
                    f = T[i][enter]
                    T[i] = [a - f * b for a, b in zip(T[i], T[leave])]
            f = z[enter]
            z = [a - f * b for a, b in zip(z, T[leave])]
            basis[leave] = enter

    phase1 = [Fraction(0)] * (n + m_ub) + [Fraction(1)] * m
    z = run(phase1, [True] * n_tot)
    if -z[-1] > 0:
        raise LPInfeasible("rational simplex: infeasible")
    # drive remaining artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n + m_ub:
            j = next((j for j in range(n + m_ub) if T[i][j] != 0), None)
            if j is not None:
                piv = T[i][j]
                T[i] = [v / piv for v in T[i]]
                for k in range(m):
                    if k != i and T[k][j]:
                        f = T[k][j]
                        T[k] = [a - f * b for a, b in zip(T[k], T[i])]
                basis[i] = j
    cost = [Fraction(v) for v in c] + [Fraction(0)] * (m_ub + m)
    allowed = [True] * (n + m_ub) + [False] * m
    z = run(cost, allowed)
    x = [Fraction(0)] * n_tot
    for i, bi in enumerate(basis):
        x[bi] = T[i][-1]
    # reduced cost of artificial i is -y_i * sign_i
    duals = [-z[n + m_ub + i] * signs[i] for i in range(m)]
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x[:n])), Fraction(0))
    return ExactSimplexResult(x=x[:n], value=value, eq_duals=duals[m_ub:], ub_duals=duals[:m_ub])
