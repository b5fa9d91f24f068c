"""
Substrate generators: triangulated patches of normed planes and balls in the
order-7 triangle tiling of the hyperbolic plane.

Normed patches carry triangle weights ``Lebesgue area * density(norm, mu)``;
hyperbolic patches carry unit weights and the graph metric of their
1-skeleton.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ..config import cap
from ..finite_metric.metric import CapExceeded, Graph, graph_metric
from ..normed_plane import PolygonalNorm, area_density, area_definition, as_number
from .complex import Chain, Loop, SimplicialComplex2, boundary_of


class MeshTooCoarse(ValueError):
    """A region boundary cannot be traced on the mesh within tolerance."""


def _density(norm: Optional[PolygonalNorm], mu: str):
    area_definition(mu)
    if norm is None:
        return Fraction(1)
    d = area_density(norm, mu)
    return Fraction(d.coef) if d.power == 0 and d.exact else float(d)


def _check_size(n_triangles: int):
    limit = cap("patch_triangles")
    if n_triangles > limit:
        raise CapExceeded(f"patch needs {n_triangles} triangles (cap {limit})")


def _square_patch(extent, mesh, density, centered: bool) -> SimplicialComplex2:
    steps = extent / mesh
    N = round(float(steps))
    if N < 1 or abs(float(steps) - N) > 1e-9:
        raise ValueError("extent must be a positive multiple of mesh")
    _check_size(2 * N * N)
    lo = -N // 2 if centered else 0
    idx = lambda i, j: j * (N + 1) + i
    coords = np.array([((i + lo) * float(mesh), (j + lo) * float(mesh))
                       for j in range(N + 1) for i in range(N + 1)])
    tris = []
    for j in range(N):
        for i in range(N):
            a, b, c, d = idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)
            tris += [(a, b, c), (a, c, d)]
    w = mesh * mesh / 2 * density
    meta = {"kind": "square", "mesh": mesh, "nodes_per_side": N + 1, "offset": lo}
    return SimplicialComplex2(len(coords), tris, coords=coords, weights=[w] * len(tris), meta=meta)


def _disk_patch(extent, mesh, density) -> SimplicialComplex2:
    """Concentric rings of radius ``k * mesh`` with ``6k`` equally spaced points."""
    K = round(float(extent / mesh))
    if K < 1:
        raise ValueError("extent must be at least one mesh step")
    _check_size(6 * K * K)
    h = float(mesh)
    coords = [(0.0, 0.0)]
    rings = [[0]]
    for k in range(1, K + 1):
        ring = []
        for j in range(6 * k):
            t = 2 * math.pi * j / (6 * k)
            ring.append(len(coords))
            coords.append((k * h * math.cos(t), k * h * math.sin(t)))
        rings.append(ring)
    tris = []
    for j in range(6):
        tris.append((0, rings[1][j], rings[1][(j + 1) % 6]))
    for k in range(2, K + 1):
        inner, outer = rings[k - 1], rings[k]
        ni, no = len(inner), len(outer)
        i = o = 0
        # merge by angle; inner point i sits at angle i/ni, outer o at o/no
        while i < ni or o < no:
            if o < no and (i == ni or (o + 1) * ni <= (i + 1) * no):
                tris.append((inner[i % ni], outer[o], outer[(o + 1) % no]))
                o += 1
            else:
                tris.append((inner[i], outer[o % no], inner[(i + 1) % ni]))
                i += 1
    X = np.array(coords)
    weights = []
    for a, b, c in tris:
        u, v = X[b] - X[a], X[c] - X[a]
        weights.append(float(u[0] * v[1] - u[1] * v[0]) / 2 * float(density))
    meta = {"kind": "disk", "mesh": mesh, "rings": rings}
    return SimplicialComplex2(len(X), tris, coords=X, weights=weights, meta=meta)


def hyperbolic7_patch(radius: int) -> SimplicialComplex2:
    """
    Combinatorial ball of the given radius in the order-7 triangle tiling.

    Built ring by ring: a ring vertex with ``d`` edges so far receives
    ``7 - d`` edges to the next ring, consecutive ring vertices sharing one
    outer neighbour. Interior vertices have degree 7; ring ``k`` is the
    combinatorial sphere of radius ``k`` about vertex 0.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    n = 8
    rings = [[0], list(range(1, 8))]
    tris = [(0, 1 + j, 1 + (j + 1) % 7) for j in range(7)]
    deg = [7] + [3] * 7
    for _ in range(radius - 1):
        ring = rings[-1]
        m = len(ring)
        outer = []
        first = None
        prev_last = None
        for t, v in enumerate(ring):
            need = 7 - deg[v]
            run = [prev_last] if prev_last is not None else []
            fresh = need - len(run) - (1 if t == m - 1 else 0)
            for _ in range(fresh):
                run.append(n)
                outer.append(n)
                deg.append(0)
                n += 1
            if t == m - 1:
                run.append(first)
            if first is None:
                first = run[0]
            for a, b in zip(run, run[1:]):
                tris.append((v, a, b))
            w = ring[(t + 1) % m]
            tris.append((v, run[-1], w))
            prev_last = run[-1]
        _check_size(len(tris))
        rings.append(outer)
        deg = [0] * n
        for a, b, c in tris:
            for x in (a, b, c):
                deg[x] += 1
        # a vertex in a closed fan has as many edges as triangles; boundary
        # vertices have one more edge than triangles
        for x in outer:
            deg[x] += 1
        for x in ring:
            deg[x] = 7
    edges = sorted({(min(u, v), max(u, v)) for a, b, c in tris for u, v in ((a, b), (b, c), (c, a))})
    g = Graph([str(v) for v in range(n)], [(u, v, 1) for u, v in edges])
    D = graph_metric(g).as_float()
    meta = {"kind": "hyperbolic7", "radius": radius, "rings": rings}
    return SimplicialComplex2(n, tris, metric=D, meta=meta)


def plane_patch(model, extent, mesh=1, mu: str = "ht", shape: str = "square",
                centered: bool = False) -> SimplicialComplex2:
    """
    Deterministic triangulated substrate.

    Parameters
    ----------
    model : PolygonalNorm, None, "euclidean" or "hyperbolic7"
        Normed plane (``None`` and ``"euclidean"`` mean the Euclidean plane)
        or the order-7 hyperbolic tiling.
    extent : number
        Side length (``square``), radius (``disk``) or combinatorial radius
        (``hyperbolic7``).
    mesh : number
        Grid step or ring spacing; ignored for the hyperbolic tiling.
    mu : {"b", "ht", "m*"}
        Area definition used for the triangle weights.
    shape : {"square", "disk"}
        ``square`` is ``[0, extent]^2`` (or centred at the origin) cut by
        the ``(1, 1)`` diagonals; ``disk`` is a ring triangulation.

    Raises
    ------
    CapExceeded
        Patch larger than ``patch_triangles``.
    """
    if isinstance(model, str) and model == "hyperbolic7":
        return hyperbolic7_patch(int(extent))
    if isinstance(model, str) and model == "euclidean":
        model = None
    extent, mesh = as_number(extent), as_number(mesh)
    if extent <= 0 or mesh <= 0:
        raise ValueError("extent and mesh must be positive")
    density = _density(model, mu)
    if shape == "square":
        k = _square_patch(extent, mesh, density, centered)
    elif shape == "disk":
        k = _disk_patch(extent, mesh, density)
    else:
        raise ValueError(f"unknown patch shape {shape!r}")
    k.meta.update({"norm": None if model is None else model.to_json(), "mu": area_definition(mu)})
    return k


def ring_loops(k: SimplicialComplex2, indices: Optional[Sequence[int]] = None) -> list:
    """Ring loops of a disk or hyperbolic patch, counterclockwise."""
    rings = k.meta.get("rings")
    if rings is None:
        raise ValueError("complex has no rings")
    indices = range(1, len(rings)) if indices is None else indices
    return [Loop(rings[i]) for i in indices]


def disk_cycle(k: SimplicialComplex2, radius: float, centre=(0.0, 0.0)) -> Chain:
    """Boundary of the triangles whose centroid lies within ``radius`` of ``centre``."""
    X = k.coords
    inside = {t: 1 for t, tri in enumerate(k.triangles)
              if np.hypot(*(X[list(tri)].mean(axis=0) - np.asarray(centre))) <= radius}
    return boundary_of(k, Chain(2, inside))


_MOVES = [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, -1)]


def trace_polygon(k: SimplicialComplex2, polygon: Sequence, tol: float = 0.25) -> Loop:
    """
    Closed edge path of a square patch following a polygon.

    Polygon vertices are snapped to mesh nodes (failing when the snap moves
    a vertex by more than ``tol`` mesh steps); each side is followed by the
    edge walk that stays closest to the segment, alternating between the two
    staircase corners so that the enclosed area error cancels in pairs.

    Raises
    ------
    MeshTooCoarse
    """
    if k.meta.get("kind") != "square":
        raise ValueError("polygon tracing needs a square patch")
    h = float(k.meta["mesh"])
    N = k.meta["nodes_per_side"]
    lo = k.meta["offset"]
    nodes = []
    for p in polygon:
        x, y = float(as_number(p[0])) / h - lo, float(as_number(p[1])) / h - lo
        i, j = round(x), round(y)
        if max(abs(x - i), abs(y - j)) > tol or not (0 <= i < N and 0 <= j < N):
            raise MeshTooCoarse(f"vertex {p} is not representable on mesh {k.meta['mesh']}")
        nodes.append((i, j))
    path = [nodes[0]]
    for s in range(len(nodes)):
        P, Q = np.array(nodes[s]), np.array(nodes[(s + 1) % len(nodes)])
        d = Q - P
        cur = P.copy()
        flip = 0
        while (cur != Q).any():
            best = []
            for mv in _MOVES:
                nxt = cur + mv
                rem, rem_new = Q - cur, Q - nxt
                if np.abs(rem_new).max() > np.abs(rem).max() or (rem_new @ rem_new) >= (rem @ rem):
                    continue
                e = nxt - P
                dev = abs(float(d[0] * e[1] - d[1] * e[0]))
                best.append((dev, int(rem_new @ rem_new), mv))
            best.sort(key=lambda t: (t[0], t[1]))
            if len(best) > 1 and best[0][0] == best[1][0] and best[0][1] == best[1][1]:
                mv = best[flip % 2][2]
                flip += 1
            else:
                mv = best[0][2]
            cur = cur + mv
            path.append(tuple(cur))
    verts = [j * N + i for i, j in path[:-1]] or [nodes[0][1] * N + nodes[0][0]] * 2
    return Loop(verts)
