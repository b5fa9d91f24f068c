"""
Simplicial 2-complexes, chains and loops.

Edges are stored as sorted vertex pairs ``(i, j)`` with ``i < j`` and the
orientation ``i -> j``; a triangle ``(a, b, c)`` is oriented by its vertex
order, so its boundary is ``(a -> b) + (b -> c) + (c -> a)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np
from scipy import sparse

Number = Union[int, float, Fraction]


class InvalidChain(ValueError):
    """A chain that is not a cycle, or refers to cells missing from the complex."""


class InvalidComplex(ValueError):
    """Malformed complex data."""


def _num(v):
    if isinstance(v, (Fraction, float)):
        return v
    if isinstance(v, (int, np.integer)):
        return Fraction(int(v))
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return Fraction(int(v[0]), int(v[1]))
    raise TypeError(f"cannot interpret {v!r} as a number")


class SimplicialComplex2:
    """
    A 2-dimensional simplicial complex.

    Parameters
    ----------
    n_vertices : int
    triangles : sequence of (a, b, c)
        Oriented 2-cells.
    edges : sequence of (a, b), optional
        Extra 1-cells not on any triangle.
    coords : (n, k) array_like, optional
        Vertex positions; used for Euclidean or sup-norm vertex distances.
    weights : sequence, optional
        Positive weight per triangle (default 1).
    metric : (n, n) array_like or FiniteMetricSpace, optional
        Explicit vertex metric.
    ambient : {"euclidean", "sup"}
        Norm used with ``coords`` when no explicit metric is given.
    labels : sequence, optional
    meta : dict, optional
        Free-form description of the substrate (kind, mesh, rings, ...).
    """

    def __init__(self, n_vertices: int, triangles: Iterable, edges: Iterable = (),
                 coords=None, weights=None, metric=None, ambient: str = "euclidean",
                 labels: Optional[Sequence] = None, meta: Optional[dict] = None):
        self.n_vertices = int(n_vertices)
        tris = [tuple(int(v) for v in t) for t in triangles]
        for t in tris:
            if len(t) != 3 or len(set(t)) != 3:
                raise InvalidComplex(f"degenerate triangle {t}")
            if min(t) < 0 or max(t) >= self.n_vertices:
                raise InvalidComplex(f"triangle {t} refers to a missing vertex")
        self.triangles = tris
        es = set()
        for a, b, c in tris:
            for u, v in ((a, b), (b, c), (c, a)):
                es.add((min(u, v), max(u, v)))
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidComplex("degenerate edge")
            es.add((min(u, v), max(u, v)))
        self.edges = sorted(es)
        self.edge_index = {e: k for k, e in enumerate(self.edges)}
        if weights is None:
            self.weights = [Fraction(1)] * len(tris)
        else:
            self.weights = [_num(w) for w in weights]
            if len(self.weights) != len(tris):
                raise InvalidComplex("one weight per triangle required")
            if any(w <= 0 for w in self.weights):
                raise InvalidComplex("weights must be positive")
        self.coords = None if coords is None else np.asarray(coords, dtype=float)
        if self.coords is not None and len(self.coords) != self.n_vertices:
            raise InvalidComplex("one coordinate row per vertex required")
        if metric is not None and hasattr(metric, "d"):
            metric = metric.d
        self.metric = None if metric is None else np.asarray(metric)
        if ambient not in ("euclidean", "sup"):
            raise InvalidComplex(f"unknown ambient norm {ambient!r}")
        self.ambient = ambient
        self.labels = list(labels) if labels is not None else None
        self.meta = dict(meta or {})

    def __repr__(self):
        return (f"SimplicialComplex2(vertices={self.n_vertices}, edges={len(self.edges)}, "
                f"triangles={len(self.triangles)})")

    @property
    def exact_weights(self) -> bool:
        return all(isinstance(w, Fraction) for w in self.weights)

    @property
    def has_metric(self) -> bool:
        return self.metric is not None or self.coords is not None

    def total_weight(self):
        return sum(self.weights, Fraction(0)) if self.exact_weights else float(sum(map(float, self.weights)))

    def edge_sign(self, u: int, v: int):
        """Index and orientation sign of the edge joining ``u`` and ``v``."""
        key = (min(u, v), max(u, v))
        try:
            k = self.edge_index[key]
        except KeyError:
            raise InvalidChain(f"edge {u}-{v} is not in the complex") from None
        return k, (1 if u < v else -1)

    def distances_to(self, targets: Sequence[int]) -> np.ndarray:
        """Distance from every vertex to the nearest vertex of ``targets``."""
        targets = list(targets)
        if self.metric is not None:
            return self.metric[:, targets].min(axis=1)
        if self.coords is None:
            raise InvalidComplex("complex has no vertex metric")
        X = self.coords
        out = np.full(self.n_vertices, np.inf)
        for t in targets:
            diff = X - X[t]
            if self.ambient == "sup":
                d = np.abs(diff).max(axis=1)
            else:
                d = np.sqrt((diff ** 2).sum(axis=1))
            out = np.minimum(out, d)
        return out

    def vertex_distance(self, u: int, v: int) -> float:
        if self.metric is not None:
            return self.metric[u, v]
        diff = self.coords[u] - self.coords[v]
        if self.ambient == "sup":
            return float(np.abs(diff).max())
        return float(math.sqrt((diff ** 2).sum()))

    def subcomplex(self, vertex_mask: np.ndarray) -> "SimplicialComplex2":
        """Triangles and edges with all vertices in the mask (same vertex ids)."""
        keep = [k for k, t in enumerate(self.triangles) if all(vertex_mask[v] for v in t)]
        edges = [e for e in self.edges if vertex_mask[e[0]] and vertex_mask[e[1]]]
        return SimplicialComplex2(self.n_vertices, [self.triangles[k] for k in keep], edges,
                                  coords=self.coords, weights=[self.weights[k] for k in keep],
                                  metric=self.metric, ambient=self.ambient, labels=self.labels,
                                  meta=self.meta)

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n_vertices, dtype=int)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


def boundary_matrices(k: SimplicialComplex2):
    """
    Integer boundary operators as sparse matrices.

    Returns
    -------
    d1 : (n_vertices, n_edges) csr_matrix of int
    d2 : (n_edges, n_triangles) csr_matrix of int
    """
    ne, nt = len(k.edges), len(k.triangles)
    r1 = np.array([[u, v] for u, v in k.edges], dtype=np.int64).reshape(-1, 2)
    d1 = sparse.csr_matrix((np.tile([-1, 1], ne), (r1.ravel(), np.repeat(np.arange(ne), 2))),
                           shape=(k.n_vertices, ne), dtype=np.int64)
    rows, cols, vals = [], [], []
    for t, (a, b, c) in enumerate(k.triangles):
        for u, v in ((a, b), (b, c), (c, a)):
            e, s = k.edge_sign(u, v)
            rows.append(e)
            cols.append(t)
            vals.append(s)
    d2 = sparse.csr_matrix((vals, (rows, cols)), shape=(ne, nt), dtype=np.int64)
    return d1, d2


@dataclass
class Chain:
    """Sparse chain: ``coeffs`` maps edges ``(i, j)`` with ``i < j`` (dimension
    1) or triangle indices (dimension 2) to nonzero coefficients."""

    dimension: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise InvalidChain("chains have dimension 1 or 2")
        clean = {}
        for cell, c in self.coeffs.items():
            c = _num(c)
            if self.dimension == 1:
                u, v = cell
                if u == v:
                    raise InvalidChain("degenerate edge in chain")
                if u > v:
                    cell, c = (v, u), -c
                else:
                    cell = (u, v)
            clean[cell] = clean.get(cell, 0) + c
        self.coeffs = {k: v for k, v in clean.items() if v != 0}

    @classmethod
    def from_vector(cls, k: SimplicialComplex2, dim: int, vec) -> "Chain":
        cells = k.edges if dim == 1 else range(len(k.triangles))
        return cls(dim, {cell: v for cell, v in zip(cells, vec) if v != 0})

    def vector(self, k: SimplicialComplex2) -> list:
        """Dense coefficient list over edges or triangles (Fractions where exact)."""
        if self.dimension == 1:
            out = [Fraction(0)] * len(k.edges)
            for (u, v), c in self.coeffs.items():
                e, s = k.edge_sign(u, v)
                out[e] += s * c
        else:
            out = [Fraction(0)] * len(k.triangles)
            for t, c in self.coeffs.items():
                if not 0 <= t < len(k.triangles):
                    raise InvalidChain(f"triangle {t} is not in the complex")
                out[t] += c
        return out

    def __add__(self, other: "Chain") -> "Chain":
        if other.dimension != self.dimension:
            raise InvalidChain("dimension mismatch")
        d = dict(self.coeffs)
        for cell, c in other.coeffs.items():
            d[cell] = d.get(cell, 0) + c
        return Chain(self.dimension, d)

    def __mul__(self, s) -> "Chain":
        s = _num(s)
        return Chain(self.dimension, {c: s * v for c, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def support_vertices(self) -> list:
        if self.dimension != 1:
            raise InvalidChain("support_vertices is defined for 1-chains")
        return sorted({v for e in self.coeffs for v in e})

    def to_json(self) -> dict:
        def enc(c):
            if isinstance(c, Fraction):
                return str(c) if c.denominator != 1 else int(c)
            return float(c)
        if self.dimension == 1:
            return {"dimension": 1, "coeffs": [[u, v, enc(c)] for (u, v), c in sorted(self.coeffs.items())]}
        return {"dimension": 2, "coeffs": [[t, enc(c)] for t, c in sorted(self.coeffs.items())]}


def boundary_of(k: SimplicialComplex2, c: Chain) -> Chain:
    """Boundary of a 2-chain as a 1-chain."""
    out = {}
    for t, coef in c.coeffs.items():
        a, b, cc = k.triangles[t]
        for u, v in ((a, b), (b, cc), (cc, a)):
            key, s = ((u, v), 1) if u < v else ((v, u), -1)
            out[key] = out.get(key, 0) + s * coef
    return Chain(1, out)


def is_cycle(k: SimplicialComplex2, z: Chain) -> bool:
    if z.dimension != 1:
        return False
    bd = {}
    for (u, v), c in z.coeffs.items():
        k.edge_sign(u, v)
        bd[u] = bd.get(u, 0) - c
        bd[v] = bd.get(v, 0) + c
    return all(x == 0 for x in bd.values())


@dataclass
class Loop:
    """Closed vertex path ``vertices[0] -> vertices[1] -> ... -> vertices[0]``."""

    vertices: list

    def __post_init__(self):
        self.vertices = [int(v) for v in self.vertices]
        if len(self.vertices) > 1 and self.vertices[0] == self.vertices[-1]:
            self.vertices = self.vertices[:-1]
        if len(self.vertices) < 2:
            raise InvalidChain("a loop needs at least two vertices")

    def steps(self):
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def chain(self) -> Chain:
        coeffs = {}
        for u, v in self.steps():
            if u == v:
                continue
            key, s = ((u, v), 1) if u < v else ((v, u), -1)
            coeffs[key] = coeffs.get(key, 0) + s
        return Chain(1, coeffs)

    def length(self, dist) -> float:
        """Sum of step lengths; ``dist`` is a matrix or a callable ``(u, v) -> length``."""
        f = dist if callable(dist) else (lambda u, v: dist[u][v])
        return sum(f(u, v) for u, v in self.steps())

    def repeated(self, times: int) -> "Loop":
        return Loop(self.vertices * times)


def chain_from_mapping(mapping: Mapping) -> Chain:
    return Chain(1, dict(mapping))
