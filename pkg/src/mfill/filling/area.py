"""
Minimal filling area of 1-cycles by linear programming.

The program is

    minimize    sum_t w_t (c+_t + c-_t)
    subject to  d2 (c+ - c-) = z,   c+, c- >= 0,

whose dual asks for an edge potential ``phi`` maximizing ``<z, phi>``
subject to ``|d2^T phi| <= w``. The optimal chain and the potential are
returned together so the value can be checked independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp

from ..config import cap
from ..lp import LPInfeasible, solve_lp
from .complex import Chain, InvalidChain, SimplicialComplex2, boundary_matrices, is_cycle


class NotFillable(ValueError):
    """The cycle is not a boundary in the complex."""


@dataclass
class FillingResult:
    """
    Attributes
    ----------
    area : Fraction or float
    chain : Chain
        Optimal 2-chain with boundary ``z``.
    potential : list
        Dual edge potential certifying optimality.
    dual_value : Fraction or float
        ``<z, potential>``; equals ``area`` up to solver tolerance.
    exact : bool
        True when area, chain and potential are exact rationals verified by
        exact arithmetic.
    integrality_gap : float, optional
        Integral optimum minus relaxed optimum (integral mode only).
    """

    area: object
    chain: Chain
    potential: list
    dual_value: object
    exact: bool
    mode: str = "relaxed"
    method: str = ""
    integrality_gap: Optional[float] = None
    notes: list = field(default_factory=list)

    @property
    def certificate_gap(self) -> float:
        return abs(float(self.area) - float(self.dual_value))


def _check_cycle(k: SimplicialComplex2, z: Chain):
    if z.dimension != 1:
        raise InvalidChain("filling needs a 1-chain")
    if not is_cycle(k, z):
        raise InvalidChain("chain is not a cycle")


def min_filling_area(k: SimplicialComplex2, z: Chain, mode: str = "relaxed",
                     exact: Optional[bool] = None) -> FillingResult:
    """
    Least weighted area of a 2-chain with boundary ``z``.

    The area of a chain ``c`` is its mass ``sum |c_t| w_t`` over triangles.

    Parameters
    ----------
    k : SimplicialComplex2
    z : Chain
        A 1-cycle of ``k``.
    mode : {"relaxed", "integral"}
        ``relaxed`` allows rational coefficients; ``integral`` forces integer
        coefficients (mixed-integer branch and bound) and reports the gap to
        the relaxation.
    exact : bool, optional
        Certify the relaxed optimum in exact rational arithmetic. Defaults to
        True for complexes with at most ``exact_lp_triangles`` triangles and
        exact weights.

    Raises
    ------
    InvalidChain
        ``z`` is not a cycle of ``k``.
    NotFillable
        ``z`` is a cycle but not a boundary.
    """
    if mode not in ("relaxed", "integral"):
        raise ValueError(f"unknown mode {mode!r}")
    _check_cycle(k, z)
    nt = len(k.triangles)
    zv = z.vector(k)
    if exact is None:
        exact = k.exact_weights and all(isinstance(v, Fraction) for v in zv) \
            and nt <= cap("exact_lp_triangles")
    _, d2 = boundary_matrices(k)
    if not z.coeffs:
        return FillingResult(Fraction(0) if exact else 0.0, Chain(2, {}),
                             [Fraction(0)] * len(k.edges), Fraction(0) if exact else 0.0,
                             exact, mode, "trivial")
    # rows of edges without triangles must carry zero coefficient
    used = np.flatnonzero(np.asarray(abs(d2).sum(axis=1)).ravel())
    used_set = set(used.tolist())
    for e in range(len(k.edges)):
        if zv[e] != 0 and e not in used_set:
            raise NotFillable(f"edge {k.edges[e]} carries the cycle but bounds no triangle")
    A = sparse.hstack([d2[used], -d2[used]], format="csr")
    b = [zv[e] for e in used]
    c = list(k.weights) + list(k.weights)
    try:
        sol = solve_lp(c, A_eq=A, b_eq=b, exact=exact)
    except LPInfeasible:
        raise NotFillable("cycle is not a boundary in this complex") from None
    notes = list(sol.notes)
    if sol.exact:
        x = sol.x_exact
        coeffs = [x[t] - x[nt + t] for t in range(nt)]
        phi = [Fraction(0)] * len(k.edges)
        for e, y in zip(used, sol.eq_duals_exact):
            phi[e] = y
        area = sol.value_exact
        dual = sum((zv[e] * phi[e] for e in range(len(k.edges))), Fraction(0))
    else:
        x = sol.x
        coeffs = [float(x[t] - x[nt + t]) for t in range(nt)]
        coeffs = [0.0 if abs(v) < 1e-12 else v for v in coeffs]
        phi = [0.0] * len(k.edges)
        for e, y in zip(used, sol.eq_duals):
            phi[e] = float(y)
        area = float(sol.value)
        dual = float(sum(float(zv[e]) * phi[e] for e in range(len(k.edges))))
    res = FillingResult(area=area, chain=Chain(2, {t: v for t, v in enumerate(coeffs) if v != 0}),
                        potential=phi, dual_value=dual, exact=sol.exact, mode="relaxed",
                        method=sol.method, notes=notes)
    if mode == "integral":
        return _integral(k, d2, used, zv, res)
    return res


def _integral(k, d2, used, zv, relaxed: FillingResult) -> FillingResult:
    """Integer-coefficient optimum by branch and bound (HiGHS MILP)."""
    nt = len(k.triangles)
    w = np.array([float(v) for v in k.weights])
    D = d2[used].astype(float)
    b = np.array([float(zv[e]) for e in used])
    A = sparse.hstack([D, -D], format="csr")
    res = milp(np.concatenate([w, w]), constraints=LinearConstraint(A, b, b),
               integrality=np.ones(2 * nt), bounds=Bounds(0, np.inf),
               options={"node_limit": cap("integral_bb_nodes")})
    if res.status != 0 or res.x is None:
        if res.status == 2:
            raise NotFillable("cycle has no integral filling")
        raise RuntimeError(f"integral filling failed: {res.message}")
    x = np.rint(res.x).astype(np.int64)
    coeffs = {t: int(x[t] - x[nt + t]) for t in range(nt) if x[t] != x[nt + t]}
    chain = Chain(2, coeffs)
    area = sum(Fraction(k.weights[t]) * abs(v) if isinstance(k.weights[t], Fraction)
               else float(k.weights[t]) * abs(v) for t, v in coeffs.items())
    gap = float(area) - float(relaxed.area)
    return FillingResult(area=area, chain=chain, potential=relaxed.potential,
                         dual_value=relaxed.dual_value, exact=relaxed.exact and isinstance(area, Fraction),
                         mode="integral", method="milp-branch-and-bound",
                         integrality_gap=gap, notes=relaxed.notes)
