"""
Injective envelopes (tight spans) of small finite metric spaces.

The envelope of ``(X, d)`` is the set of minimal elements of the polyhedron

    P(X) = {f in R^X : f(x) + f(y) >= d(x, y) for all x, y}

with the sup metric; it is the union of the bounded faces of P(X). Vertices
and edges of P(X) are enumerated with cdd, vertices are snapped to exact
rationals for exact inputs, and the maximal bounded faces are recovered
from the tight sets of their vertices. The envelope is then discretized by
sampling edges and barycentric lattices on the cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Optional

import cdd
import numpy as np

from ..config import cap
from ..lp import solve_linear_exact
from .metric import CapExceeded, FiniteMetricSpace

_FACE_LIMIT = 20_000
_CELL_POINT_BUDGET = 1_500
_POINT_BUDGET = 3_000


@dataclass
class TightSpan:
    """
    Discretized injective envelope.

    Attributes
    ----------
    space : FiniteMetricSpace
        Sample points under the sup metric. The first ``n`` points are the
        images ``d(x, .)`` of the input points, in input order.
    functions : (N, n) ndarray
        The extremal function behind every sample point.
    embedding : list of int
        Indices of the input points inside ``space``.
    vertices : (V, n) ndarray
        Vertices of the envelope polyhedral complex.
    vertices_exact : list of tuples of Fraction, or None
    edges : list of (int, int)
        Bounded edges, as vertex index pairs.
    cells : list of tuple of int
        Maximal bounded faces, as vertex index tuples.
    """

    space: FiniteMetricSpace
    functions: np.ndarray
    embedding: list
    vertices: np.ndarray
    edges: list
    cells: list
    vertices_exact: Optional[list] = None
    dimension: int = 0
    notes: list = field(default_factory=list)

    def edge_lengths(self) -> list:
        V = self.vertices_exact if self.vertices_exact is not None else self.vertices
        return [max(abs(a - b) for a, b in zip(V[i], V[j])) for i, j in self.edges]

    def extremality_residual(self, d: np.ndarray) -> float:
        """Largest violation of f(x) = max_y (d(x, y) - f(y)) over all samples."""
        F = self.functions
        rhs = (d[None, :, :] - F[:, None, :]).max(axis=2)
        return float(np.abs(F - rhs).max())


def _pairs(n):
    return [(i, j) for i in range(n) for j in range(i, n)]


def _enumerate(d: np.ndarray):
    n = d.shape[0]
    rows = []
    for i, j in _pairs(n):
        r = [-float(d[i, j])] + [0.0] * n
        r[1 + i] += 1.0
        r[1 + j] += 1.0
        rows.append(r)
    mat = cdd.matrix_from_array(rows, rep_type=cdd.RepType.INEQUALITY)
    poly = cdd.polyhedron_from_matrix(mat)
    gens = np.array(cdd.copy_generators(poly).array, dtype=float)
    adj = cdd.copy_adjacency(poly)
    is_vertex = gens[:, 0] == 1.0
    vid = {g: k for k, g in enumerate(np.flatnonzero(is_vertex))}
    verts = gens[is_vertex, 1:]
    edges = sorted({(min(vid[a], vid[b]), max(vid[a], vid[b]))
                    for a in vid for b in adj[a] if b in vid})
    return verts, edges


def _snap_vertex(v, d_exact, n, pairs, tol):
    tight = [(i, j) for i, j in pairs if abs(v[i] + v[j] - float(d_exact[i][j])) <= tol]
    rows = []
    rhs = []
    for i, j in tight:
        r = [Fraction(0)] * n
        r[i] += 1
        r[j] += 1
        rows.append(r)
        rhs.append(Fraction(d_exact[i][j]))
    f = solve_linear_exact(rows, rhs, n)
    if f is None:
        return None
    if any(f[i] + f[j] < d_exact[i][j] for i, j in pairs):
        return None
    if any(abs(float(a) - b) > 1e3 * tol for a, b in zip(f, v)):
        return None
    return tuple(f)


def _maximal_faces(tight_masks, edges, covers):
    """Grow bounded faces from edges by intersecting tight sets."""
    nv = len(tight_masks)
    nbrs = [set() for _ in range(nv)]
    for a, b in edges:
        nbrs[a].add(b)
        nbrs[b].add(a)

    cache = {}

    def face_of(mask):
        F = cache.get(mask)
        if F is None:
            F = cache[mask] = frozenset(v for v in range(nv) if tight_masks[v] & mask == mask)
        return F

    faces = {}
    stack = []
    for a, b in edges:
        m = tight_masks[a] & tight_masks[b]
        F = face_of(m)
        if F not in faces:
            faces[F] = m
            stack.append(F)
    truncated = False
    while stack:
        F = stack.pop()
        m = faces[F]
        for w in set().union(*(nbrs[v] for v in F)) - F:
            m2 = m & tight_masks[w]
            if m2 in cache or not covers(m2):
                continue
            G = face_of(m2)
            if G not in faces:
                faces[G] = m2
                stack.append(G)
                if len(faces) > _FACE_LIMIT:
                    truncated = True
                    stack.clear()
                    break
    items = sorted(faces, key=len, reverse=True)
    maximal = []
    for F in items:
        if not any(F < G for G in maximal):
            maximal.append(F)
    return [tuple(sorted(F)) for F in maximal], truncated


def _lattice(m: int, N: int):
    """Barycentric lattice points with denominator N on an m-vertex cell."""
    for combo in combinations_with_replacement(range(m), N):
        w = np.bincount(combo, minlength=m) / N
        yield w


def _sample(verts, edges, cells, dims, h, notes):
    samples = [verts]
    skipped = 0
    for a, b in edges:
        L = float(np.abs(verts[a] - verts[b]).max())
        k = max(1, math.ceil(L / h - 1e-9))
        if k > 1:
            t = np.arange(1, k)[:, None] / k
            samples.append(verts[a] + t * (verts[b] - verts[a]))
    for cell, dim in zip(cells, dims):
        if dim < 2:
            continue
        P = verts[list(cell)]
        cd = float(np.abs(P[:, None, :] - P[None, :, :]).max())
        N = max(2, math.ceil(cd / h))
        mcount = len(cell)
        while N > 2 and math.comb(N + mcount - 1, mcount - 1) > _CELL_POINT_BUDGET:
            N -= 1
        if math.comb(N + mcount - 1, mcount - 1) > _CELL_POINT_BUDGET:
            skipped += 1
            continue
        W = np.array(list(_lattice(mcount, N)))
        samples.append(W @ P)
    if skipped:
        notes.append(f"{skipped} large cells sampled at their vertices and edges only")
    F = np.vstack(samples)
    # deduplicate, keeping first occurrences (vertices stay at the front)
    _, first = np.unique(np.round(F / max(h, 1e-12) * 1e6).astype(np.int64), axis=0,
                         return_index=True)
    return F[np.sort(first)]


def tight_span(m: FiniteMetricSpace, sample_density: Optional[float] = None) -> TightSpan:
    """
    Discretized injective envelope of ``m``.

    Parameters
    ----------
    m : FiniteMetricSpace
        At most ``tight_span_points`` points (default 12).
    sample_density : float, optional
        Target spacing of sample points along edges and inside cells.
        Defaults to one eighth of the diameter.

    Raises
    ------
    CapExceeded
        When ``m`` has more points than the desk-scale cap.
    """
    n = len(m)
    limit = cap("tight_span_points")
    if n > limit:
        raise CapExceeded(f"tight span limited to {limit} points, got {n}")
    d = m.as_float()
    diam = float(d.max()) if n > 1 else 0.0
    h = float(sample_density) if sample_density else max(diam / 8, 1e-12)
    if n == 1:
        return TightSpan(FiniteMetricSpace(np.zeros((1, 1)), m.labels, validate=False),
                         np.zeros((1, 1)), [0], np.zeros((1, 1)), [], [],
                         [(Fraction(0),)] if m.exact else None, 0)

    verts, edges = _enumerate(d)
    pairs = _pairs(n)
    tol = 1e-7 * max(1.0, diam)
    exact = m.exact
    verts_exact = None
    if exact:
        d_exact = m.exact_matrix()
        snapped = [_snap_vertex(v, d_exact, n, pairs, tol) for v in verts]
        if all(s is not None for s in snapped):
            verts_exact = snapped
            verts = np.array([[float(x) for x in s] for s in snapped])
    # put the input points first
    order = []
    for i in range(n):
        k = int(np.argmin(np.abs(verts - d[i]).max(axis=1)))
        order.append(k)
    rest = [k for k in range(len(verts)) if k not in set(order)]
    perm = order + rest
    inv = {old: new for new, old in enumerate(perm)}
    verts = verts[perm]
    if verts_exact is not None:
        verts_exact = [verts_exact[k] for k in perm]
    edges = sorted({(min(inv[a], inv[b]), max(inv[a], inv[b])) for a, b in edges})

    pair_bit = {p: 1 << k for k, p in enumerate(pairs)}
    if verts_exact is not None:
        tight_masks = [sum(pair_bit[(i, j)] for i, j in pairs
                           if f[i] + f[j] == d_exact[i][j]) for f in verts_exact]
    else:
        tight_masks = [sum(pair_bit[(i, j)] for i, j in pairs
                           if abs(f[i] + f[j] - d[i, j]) <= tol) for f in verts]
    point_bits = [sum(pair_bit[p] for p in pairs if x in p) for x in range(n)]

    def covers(mask):
        return all(mask & pb for pb in point_bits)

    cells, truncated = _maximal_faces(tight_masks, edges, covers)
    notes = []
    if truncated:
        notes.append("face enumeration truncated; cells sampled partially")

    def dim_of(cell):
        P = verts[list(cell)]
        return int(np.linalg.matrix_rank(P - P[0], tol=1e-9 * max(1.0, diam))) if len(cell) > 1 else 0

    dims = [dim_of(c) for c in cells]
    dimension = max(dims, default=0)

    F = _sample(verts, edges, cells, dims, h, notes)
    while len(F) > _POINT_BUDGET and h < 2 * diam:
        h *= 1.5
        F = _sample(verts, edges, cells, dims, h, [])
    if len(F) > _POINT_BUDGET:
        F = _sample(verts, edges, [], [], h, [])
        notes.append("cells dropped from the sample to respect the point budget")
    if h > (float(sample_density) if sample_density else diam / 8):
        notes.append(f"sample spacing coarsened to {h:.6g} to respect the point budget")
    D = np.abs(F[:, None, :] - F[None, :, :]).max(axis=2)
    nv = len(verts)
    labels = list(m.labels) + [f"v{k}" for k in range(n, nv)] + [f"s{k}" for k in range(len(F) - nv)]
    space = FiniteMetricSpace(D, labels, validate=False)
    return TightSpan(space=space, functions=F, embedding=list(range(n)), vertices=verts,
                     edges=edges, cells=cells, vertices_exact=verts_exact,
                     dimension=dimension, notes=notes)


def tripod_legs(m: FiniteMetricSpace) -> list:
    """Closed-form leg lengths ``(d_ij + d_ik - d_jk) / 2`` of a 3-point space."""
    d = m.exact_matrix() if m.exact else m.as_float()
    legs = []
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        legs.append((d[i][j] + d[i][k] - d[j][k]) / 2)
    return legs
