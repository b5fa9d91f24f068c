"""
Finite metric spaces, weighted graphs and their shortest-path metrics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path


class InvalidMetric(ValueError):
    """A distance matrix violating the metric axioms."""


class DisconnectedGraph(ValueError):
    """Shortest-path metric requested for a graph with several components."""


class CapExceeded(RuntimeError):
    """A desk-scale size cap was exceeded."""


def _is_integral(a: np.ndarray) -> bool:
    return a.dtype != object and bool(np.all(np.isfinite(a))) and bool(np.all(a == np.round(a)))


def integer_scale(d: np.ndarray):
    """
    Write an exact matrix as ``M / s`` with ``M`` an int64 array.

    Returns ``(M, s)`` or ``None`` when the entries are not rational with a
    common denominator that keeps ``M`` within float-exact range.
    """
    if d.dtype != object:
        if _is_integral(d) and np.abs(d).max(initial=0) < 2**52:
            return d.astype(np.int64), 1
        return None
    s = 1
    for v in d.flat:
        s = math.lcm(s, Fraction(v).denominator)
    M = np.array([[int(Fraction(v) * s) for v in row] for row in d], dtype=object)
    if np.abs(M).max(initial=0) >= 2**52:
        return None
    return M.astype(np.int64), s


class FiniteMetricSpace:
    """
    Labelled finite metric space.

    Parameters
    ----------
    d : (n, n) array_like
        Distances. An object array of Fractions keeps the space exact; a float
        array with integral entries is treated as exact as well.
    labels : sequence of hashables, optional
        Defaults to ``"0", "1", ...``.
    validate : bool
        Check symmetry, zero diagonal, positivity and the triangle inequality.
    """

    def __init__(self, d, labels: Optional[Sequence[Hashable]] = None, validate: bool = True):
        arr = np.asarray(d)
        if arr.dtype == object:
            arr = np.array([[Fraction(v) if not isinstance(v, float) else v for v in row]
                            for row in arr], dtype=object)
            if any(isinstance(v, float) for v in arr.flat):
                arr = arr.astype(float)
        else:
            arr = arr.astype(float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidMetric("distance matrix must be square")
        self.d = arr
        self.d.setflags(write=False)
        n = arr.shape[0]
        self.labels = [str(i) for i in range(n)] if labels is None else list(labels)
        if len(self.labels) != n:
            raise InvalidMetric("label count does not match the matrix")
        if len(set(self.labels)) != n:
            raise InvalidMetric("labels must be distinct")
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if validate:
            self._validate()

    def _validate(self):
        d = self.d
        n = len(self)
        tol = 0.0 if self.exact else 1e-9 * max(1.0, float(np.max(np.abs(d.astype(float)), initial=0)))
        for i in range(n):
            if d[i, i] != 0:
                raise InvalidMetric("nonzero diagonal")
            for j in range(i + 1, n):
                if d[i, j] != d[j, i] and abs(float(d[i, j]) - float(d[j, i])) > tol:
                    raise InvalidMetric(f"asymmetric at ({self.labels[i]}, {self.labels[j]})")
                if d[i, j] <= 0:
                    raise InvalidMetric(f"distinct points {self.labels[i]}, {self.labels[j]} at distance <= 0")
        if d.dtype == object:
            for k in range(n):
                for i in range(n):
                    for j in range(n):
                        if d[i, j] > d[i, k] + d[k, j]:
                            raise InvalidMetric("triangle inequality fails")
        else:
            for k in range(n):
                if np.any(d > d[:, k, None] + d[None, k, :] + tol):
                    raise InvalidMetric("triangle inequality fails")

    def __len__(self):
        return self.d.shape[0]

    @property
    def n(self) -> int:
        return len(self)

    @property
    def exact(self) -> bool:
        return self.d.dtype == object or _is_integral(self.d)

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown point {label!r}") from None

    def dist(self, a, b):
        return self.d[self.index(a), self.index(b)]

    def as_float(self) -> np.ndarray:
        return self.d.astype(float)

    def exact_matrix(self) -> np.ndarray:
        """Object array of Fractions (only meaningful when ``exact``)."""
        if self.d.dtype == object:
            return self.d
        return np.array([[Fraction(float(v)) for v in row] for row in self.d], dtype=object)

    def diameter(self):
        if len(self) == 0:
            return 0
        return self.d.max()

    def scaled(self, c) -> "FiniteMetricSpace":
        if self.d.dtype == object:
            c = Fraction(c)
        return FiniteMetricSpace(self.d * c, self.labels, validate=False)

    def subspace(self, idx: Sequence[int]) -> "FiniteMetricSpace":
        idx = list(idx)
        return FiniteMetricSpace(self.d[np.ix_(idx, idx)], [self.labels[i] for i in idx],
                                 validate=False)

    def __repr__(self):
        return f"FiniteMetricSpace(n={len(self)}, exact={self.exact})"


@dataclass
class Graph:
    """
    Undirected graph with positive edge lengths.

    ``edges`` holds ``(i, j, w)`` index triples; ``coords`` optionally stores
    vertex positions for plotting or coordinate witnesses.
    """

    vertices: list
    edges: list
    coords: Optional[np.ndarray] = None
    _index: dict = field(default=None, repr=False)

    def __post_init__(self):
        self.vertices = list(self.vertices)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        if len(self._index) != len(self.vertices):
            raise ValueError("vertex labels must be distinct")
        clean = []
        for i, j, w in self.edges:
            if i == j:
                raise ValueError(f"self-loop at {self.vertices[i]}")
            if w <= 0:
                raise ValueError("edge weights must be positive")
            clean.append((int(i), int(j), w))
        self.edges = clean

    @classmethod
    def from_labelled_edges(cls, edges: Iterable, vertices: Optional[Sequence] = None):
        """Build from ``(u, v)`` or ``(u, v, w)`` tuples of vertex labels."""
        edges = list(edges)
        if vertices is None:
            vertices = []
            seen = set()
            for e in edges:
                for v in e[:2]:
                    if v not in seen:
                        seen.add(v)
                        vertices.append(v)
        idx = {v: i for i, v in enumerate(vertices)}
        out = []
        for e in edges:
            w = e[2] if len(e) > 2 else 1
            out.append((idx[e[0]], idx[e[1]], w))
        return cls(list(vertices), out)

    def __len__(self):
        return len(self.vertices)

    def index(self, v) -> int:
        return self._index[v]

    @property
    def exact(self) -> bool:
        return all(isinstance(w, (int, Fraction, np.integer)) or float(w).is_integer()
                   for _, _, w in self.edges)

    def adjacency(self, scale: int = 1) -> csr_matrix:
        n = len(self)
        if not self.edges:
            return csr_matrix((n, n))
        rows, cols, vals = [], [], []
        best = {}
        for i, j, w in self.edges:
            key = (min(i, j), max(i, j))
            wv = float(Fraction(w) * scale) if not isinstance(w, float) else w * scale
            if key not in best or wv < best[key]:
                best[key] = wv
        for (i, j), w in best.items():
            rows += [i, j]
            cols += [j, i]
            vals += [w, w]
        return csr_matrix((vals, (rows, cols)), shape=(n, n))

    def neighbors(self) -> list:
        nb = [[] for _ in range(len(self))]
        for i, j, w in self.edges:
            nb[i].append(j)
            nb[j].append(i)
        return nb

    def induced(self, idx: Sequence[int]) -> "Graph":
        idx = list(idx)
        pos = {v: k for k, v in enumerate(idx)}
        edges = [(pos[i], pos[j], w) for i, j, w in self.edges if i in pos and j in pos]
        coords = None if self.coords is None else self.coords[idx]
        return Graph([self.vertices[i] for i in idx], edges, coords)


def _weight_scale(g: Graph) -> int:
    s = 1
    for _, _, w in g.edges:
        if isinstance(w, Fraction):
            s = math.lcm(s, w.denominator)
    return s


def shortest_paths(g: Graph, return_predecessors: bool = False):
    """All-pairs shortest paths; raises DisconnectedGraph if needed."""
    n = len(g)
    if n == 0:
        raise DisconnectedGraph("empty graph")
    s = _weight_scale(g)
    A = g.adjacency(scale=s)
    ncomp, _ = connected_components(A, directed=False)
    if ncomp > 1:
        raise DisconnectedGraph(f"graph has {ncomp} connected components")
    out = shortest_path(A, method="D", directed=False, return_predecessors=return_predecessors)
    if return_predecessors:
        D, pred = out
        return D / s if s != 1 else D, pred, s
    return out / s if s != 1 else out


def graph_metric(g: Graph) -> FiniteMetricSpace:
    """
    Shortest-path metric of a connected graph.

    Integer weights give an exact integral matrix; rational weights are
    scaled to integers for the search and returned as Fractions.
    """
    s = _weight_scale(g)
    D = shortest_paths(g)
    if s != 1:
        Ds = np.rint(D * s).astype(np.int64)
        D = np.array([[Fraction(int(v), s) for v in row] for row in Ds], dtype=object)
    return FiniteMetricSpace(D, [str(v) for v in g.vertices], validate=False)


# --------------------------------------------------------------------------
# graph generators


def path_graph(n: int) -> Graph:
    return Graph([str(i) for i in range(n)], [(i, i + 1, 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph([str(i) for i in range(n)], [(i, (i + 1) % n, 1) for i in range(n)])


def grid_graph(n: int, m: Optional[int] = None) -> Graph:
    """The ``n x m`` grid of unit squares' vertices, labels ``"x,y"``."""
    m = n if m is None else m
    labels = [f"{x},{y}" for y in range(m) for x in range(n)]
    edges = []
    for y in range(m):
        for x in range(n):
            i = y * n + x
            if x + 1 < n:
                edges.append((i, i + 1, 1))
            if y + 1 < m:
                edges.append((i, i + n, 1))
    coords = np.array([(x, y) for y in range(m) for x in range(n)], dtype=float)
    return Graph(labels, edges, coords)


def binary_tree(depth: int) -> Graph:
    """Rooted binary tree; vertex labels are root-to-node strings of 0/1."""
    labels = [""]
    edges = []
    frontier = [0]
    for _ in range(depth):
        nxt = []
        for p in frontier:
            for bit in "01":
                labels.append(labels[p] + bit)
                edges.append((p, len(labels) - 1, 1))
                nxt.append(len(labels) - 1)
        frontier = nxt
    labels = [lab or "root" for lab in labels]
    return Graph(labels, edges)


def random_metric(n: int, seed: int, high: int = 20) -> FiniteMetricSpace:
    """Seeded random exact metric: shortest paths of a random complete graph."""
    rng = np.random.default_rng(seed)
    w = rng.integers(1, high + 1, size=(n, n))
    edges = [(i, j, int(w[i, j])) for i in range(n) for j in range(i + 1, n)]
    return graph_metric(Graph([str(i) for i in range(n)], edges))
