"""
Filling radius by filtration sweeps.

Triangles are added in order of an entry value (distance of their vertices
from the cycle, or Rips diameter) and the boundary matrix is reduced
incrementally over the rationals, persistence style: every column is
reduced until its lowest nonzero row is unique. The cycle ``z`` is reduced
against the current columns after each step; it bounds exactly when it
reduces to zero, and the entry value at that moment is the answer.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ..finite_metric.embedding import kuratowski_embed
from ..finite_metric.metric import FiniteMetricSpace
from .complex import Chain, InvalidChain, Loop, SimplicialComplex2, is_cycle
from .area import NotFillable


class _Reducer:
    """Incremental rational column reduction with a tracked target vector."""

    def __init__(self, target: dict):
        self.pivots = {}
        self.target = dict(target)

    @staticmethod
    def _reduce(col: dict, pivots: dict) -> dict:
        while col:
            low = max(col)
            other = pivots.get(low)
            if other is None:
                return col
            f = col[low] / other[low]
            for r, v in other.items():
                nv = col.get(r, 0) - f * v
                if nv:
                    col[r] = nv
                else:
                    col.pop(r, None)
        return col

    def add(self, col: dict) -> bool:
        """Add a column; return True when the target becomes zero."""
        col = self._reduce(dict(col), self.pivots)
        if col:
            self.pivots[max(col)] = col
            if self.target:
                self.target = self._reduce(self.target, self.pivots)
        return not self.target

    @property
    def done(self) -> bool:
        return not self.target


def _sweep(edge_order: dict, triangles: Sequence, entry: Sequence, target: dict):
    """Return the first entry value at which ``target`` dies, or None."""
    red = _Reducer(target)
    if red.done:
        return None, 0
    order = sorted(range(len(triangles)), key=lambda t: (entry[t], t))
    for count, t in enumerate(order, 1):
        a, b, c = triangles[t]
        col = {}
        for u, v in ((a, b), (b, c), (c, a)):
            key, s = ((u, v), 1) if u < v else ((v, u), -1)
            r = edge_order[key]
            col[r] = col.get(r, 0) + Fraction(s)
        col = {r: v for r, v in col.items() if v}
        if red.add(col):
            return entry[t], count
    return None, len(order)


def _target(edge_order: dict, z: Chain) -> dict:
    out = {}
    for (u, v), c in z.coeffs.items():
        out[edge_order[(u, v)]] = Fraction(c)
    return out


def filling_radius(k: SimplicialComplex2, z: Chain):
    """
    Smallest r such that ``z`` bounds in the subcomplex of vertices within
    distance r of its support.

    Candidate radii are the vertex distances to the support; triangles enter
    once all three vertices are admissible, so the sweep is a sorted scan
    with an exact rational feasibility test at each step.

    Raises
    ------
    InvalidChain
        ``z`` is not a cycle, or the complex has no vertex metric.
    NotFillable
        ``z`` does not bound anywhere in ``k``.
    """
    if not is_cycle(k, z):
        raise InvalidChain("chain is not a cycle")
    if not k.has_metric:
        raise InvalidChain("filling radius needs a vertex metric")
    if not z.coeffs:
        return 0
    spt = z.support_vertices()
    dist = k.distances_to(spt)
    entry = [max(dist[a], dist[b], dist[c]) for a, b, c in k.triangles]
    # rows ordered by edge entry value so that pivots sit on late edges
    e_entry = [max(dist[u], dist[v]) for u, v in k.edges]
    order = sorted(range(len(k.edges)), key=lambda e: (e_entry[e], e))
    edge_order = {k.edges[e]: r for r, e in enumerate(order)}
    value, _ = _sweep(edge_order, k.triangles, entry, _target(edge_order, z))
    if value is None:
        raise NotFillable("cycle does not bound in the complex")
    if isinstance(value, (np.floating, float)):
        return float(value)
    return value


def rips_filling_radius(m: FiniteMetricSpace, z: Loop, max_scale: Optional[float] = None):
    """
    Half the Vietoris-Rips death scale of the loop class.

    Every triple of points spans a triangle entering at its diameter; the
    scale at which ``z`` first bounds is ``t*`` and ``t* / 2`` is returned.

    Raises
    ------
    NotFillable
        When the loop survives up to ``max_scale`` (default: the diameter,
        where it must die, so this signals an internal error).
    """
    D = m.d
    n = len(m)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edge_order = {e: r for r, e in enumerate(sorted(edges, key=lambda e: (float(D[e]), e)))}
    tris = list(itertools.combinations(range(n), 3))
    entry = [max(D[a, b], D[b, c], D[a, c]) for a, b, c in tris]
    if max_scale is not None:
        keep = [t for t in range(len(tris)) if entry[t] <= max_scale]
        tris = [tris[t] for t in keep]
        entry = [entry[t] for t in keep]
    zc = z.chain()
    for (u, v) in zc.coeffs:
        if (u, v) not in edge_order:
            raise InvalidChain("loop uses a point outside the space")
    loop_len = max(D[u, v] for u, v in z.steps())
    value, _ = _sweep(edge_order, tris, entry, _target(edge_order, zc))
    if value is None:
        raise NotFillable("loop class survives every Rips scale considered")
    value = max(value, loop_len)
    return value / 2


def kuratowski_neighborhood_complex(m: FiniteMetricSpace, scale: float):
    """
    Explicit complex inside the sup-norm space around the Kuratowski image.

    The Rips complex at ``scale`` is subdivided barycentrically; the vertex
    for a simplex ``s`` is the function ``max_{x in s} d(x, .) - diam(s) / 2``
    (shifted by the basepoint row), which lies at sup distance exactly
    ``diam(s) / 2`` from each vertex of ``s``.

    Returns
    -------
    complex : SimplicialComplex2
        Sup-norm complex with vertex coordinates; the first ``len(m)``
        vertices are the Kuratowski images of the points.
    centres : dict
        Maps sorted vertex tuples of Rips simplices to vertex ids.
    """
    D = m.as_float()
    n = len(m)
    phi = np.asarray(kuratowski_embed(m, m.labels[0]).coords, dtype=float)
    pts = [phi[i] for i in range(n)]
    centres = {(i,): i for i in range(n)}

    def centre(simplex):
        if simplex not in centres:
            diam = max(D[u, v] for u, v in itertools.combinations(simplex, 2))
            centres[simplex] = len(pts)
            pts.append(D[list(simplex)].max(axis=0) - diam / 2 - D[0])
        return centres[simplex]

    edges = []
    for u, v in itertools.combinations(range(n), 2):
        if D[u, v] <= scale:
            ce = centre((u, v))
            edges += [(u, ce), (ce, v)]
    tris = []
    for a, b, c in itertools.combinations(range(n), 3):
        if max(D[a, b], D[b, c], D[a, c]) > scale:
            continue
        ct = centre((a, b, c))
        # the six flags point < edge < triangle, oriented like (a, b, c)
        for v, w in ((a, b), (b, c), (c, a)):
            ce = centre(tuple(sorted((v, w))))
            tris.append((v, ce, ct))
            tris.append((ce, w, ct))
    K = SimplicialComplex2(len(pts), tris, edges, coords=np.array(pts), ambient="sup")
    return K, centres


def kuratowski_filling_radius(m: FiniteMetricSpace, z: Loop, scale: Optional[float] = None):
    """
    Filling radius of the loop inside the explicit sup-norm neighbourhood
    complex of its Kuratowski image (see :func:`kuratowski_neighborhood_complex`).
    """
    if scale is None:
        scale = float(m.as_float().max())
    K, centres = kuratowski_neighborhood_complex(m, scale)
    coeffs = {}
    for u, v in z.steps():
        c = centres.get((min(u, v), max(u, v)))
        if c is None:
            raise InvalidChain(f"loop step {u}-{v} is longer than the complex scale")
        for x, y in ((u, c), (c, v)):
            key, s = ((x, y), 1) if x < y else ((y, x), -1)
            coeffs[key] = coeffs.get(key, 0) + s
    return filling_radius(K, Chain(1, coeffs))
