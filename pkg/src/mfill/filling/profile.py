"""
Isoperimetric profiles of loop families and the semi-ellipticity check for
flat regions of normed planes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ..normed_plane import PolygonalNorm, area_density, area_definition, as_number, gauge, shoelace_area
from .area import NotFillable, min_filling_area
from .complex import Loop, SimplicialComplex2
from .patches import plane_patch, trace_polygon


@dataclass
class ProfileRow:
    length: float
    fill_area: object
    ratio: float


@dataclass
class ProfileResult:
    """
    Attributes
    ----------
    rows : list of ProfileRow
    coefficient : float
        Least-squares ``c`` in ``fill_area ~ c * length**2``.
    exponent : float
        Slope of ``log fill_area`` against ``log length``.
    verdict : str
        ``quadratic-with-constant~c``, ``subquadratic`` or ``indeterminate``.
    """

    rows: list
    coefficient: float
    exponent: float
    verdict: str
    skipped: list = field(default_factory=list)

    @property
    def ratios(self) -> list:
        return [r.ratio for r in self.rows]

    @property
    def strictly_decreasing(self) -> bool:
        q = self.ratios
        return all(b < a for a, b in zip(q, q[1:]))


def loop_length(k: SimplicialComplex2, loop: Loop, norm: Optional[PolygonalNorm] = None) -> float:
    """Length of a loop for the complex's vertex metric, or for ``norm`` on coordinates."""
    if norm is None:
        return float(loop.length(k.vertex_distance))
    X = k.coords
    return float(sum(float(gauge(norm, X[v] - X[u])) for u, v in loop.steps()))


def isoperimetric_profile(k: SimplicialComplex2, loops: Sequence[Loop],
                          norm: Optional[PolygonalNorm] = None) -> ProfileResult:
    """
    Fill every loop (relaxed mode) and summarize ``fill_area / length**2``.

    Loops that do not bound in ``k`` are skipped and listed in ``skipped``.
    """
    rows, skipped = [], []
    for i, loop in enumerate(loops):
        try:
            res = min_filling_area(k, loop.chain())
        except NotFillable as exc:
            skipped.append((i, str(exc)))
            continue
        L = loop_length(k, loop, norm)
        rows.append(ProfileRow(L, res.area, float(res.area) / L ** 2 if L > 0 else math.nan))
    L = np.array([r.length for r in rows])
    A = np.array([float(r.fill_area) for r in rows])
    c = float((A * L ** 2).sum() / (L ** 4).sum()) if len(rows) else math.nan
    good = (L > 0) & (A > 0)
    if good.sum() >= 2:
        p = float(np.polyfit(np.log(L[good]), np.log(A[good]), 1)[0])
    else:
        p = math.nan
    if p >= 1.75:
        verdict = f"quadratic-with-constant~{c:.4g}"
    elif p <= 1.5:
        verdict = "subquadratic"
    else:
        verdict = "indeterminate"
    return ProfileResult(rows, c, p, verdict, skipped)


@dataclass
class SemiEllipticityResult:
    verdict: str
    fill_area: object
    region_area: object
    ratio: float
    mu: str
    mesh: object
    tolerance: float
    experimental: bool
    notes: list = field(default_factory=list)


def _convex_ccw(region: Sequence) -> list:
    pts = [(as_number(p[0]), as_number(p[1])) for p in region]
    area = shoelace_area(pts)
    if area < 0:
        pts = pts[::-1]
    n = len(pts)
    for i in range(n):
        (ax, ay), (bx, by), (cx, cy) = pts[i], pts[(i + 1) % n], pts[(i + 2) % n]
        if (bx - ax) * (cy - by) - (by - ay) * (cx - bx) < 0:
            raise ValueError("region must be convex")
    return pts


def semi_ellipticity_check(norm: Optional[PolygonalNorm], region: Sequence, mesh=Fraction(1, 8),
                           mu: str = "m*", tolerance: float = 0.05) -> SemiEllipticityResult:
    """
    Compare the least filling of a region's boundary with its flat area.

    The boundary of the convex polygon ``region`` is traced on a square
    patch of step ``mesh`` weighted by ``density(norm, mu)`` (``norm=None``
    is the Euclidean plane). The verdict is PASS iff
    ``fill >= mu(region) * (1 - tolerance)``. Hausdorff weights (``mu="b"``)
    are accepted but marked experimental.

    Raises
    ------
    MeshTooCoarse
        A region vertex does not sit on the mesh.
    """
    mu = area_definition(mu)
    mesh = as_number(mesh)
    pts = _convex_ccw(region) if len(region) >= 3 else [(as_number(p[0]), as_number(p[1])) for p in region]
    R = max(max(abs(float(x)), abs(float(y))) for x, y in pts)
    N = 2 * math.ceil(R / float(mesh)) + 4
    k = plane_patch(norm, N * mesh, mesh, mu=mu, centered=True)
    loop = trace_polygon(k, pts)
    dens = area_density(norm, mu) if norm is not None else 1
    leb = abs(shoelace_area(pts)) if len(pts) >= 3 else Fraction(0)
    if isinstance(dens, int) or (getattr(dens, "power", 1) == 0 and dens.exact):
        region_area = leb * (dens if isinstance(dens, int) else Fraction(dens.coef))
    else:
        region_area = float(leb) * float(dens)
    chain = loop.chain()
    notes = []
    if mu == "hausdorff":
        notes.append("Hausdorff weights: semi-ellipticity is not known in general; experimental mode")
    if not chain.coeffs:
        fill = Fraction(0)
    else:
        fill = min_filling_area(k, chain).area
    if region_area == 0:
        ratio = 1.0 if fill == 0 else math.inf
        verdict = "PASS"
        notes.append("degenerate region")
    else:
        ratio = float(fill) / float(region_area)
        verdict = "PASS" if float(fill) >= float(region_area) * (1 - tolerance) else "FAIL"
    return SemiEllipticityResult(verdict, fill, region_area, ratio, mu, mesh, tolerance,
                                 experimental=mu == "hausdorff", notes=notes)
