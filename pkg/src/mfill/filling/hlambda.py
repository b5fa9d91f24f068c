"""
Lower bounds for the loop functional

    H(f, pi, gamma) = int_0^1 (f o gamma)(s) (pi o gamma)'(s) ds

over closed curves of Lipschitz constant ``lam * r`` (unit parametrization)
and pairs of ``lam / r``-Lipschitz functions. On a graph loop with piecewise
linear interpolation the integral is the discrete Stokes sum

    T(f, pi) = sum_e c(e) * (f(u) + f(v)) / 2 * (pi(v) - pi(u))

over the induced 1-chain ``c``. ``T`` is bilinear, so fixing one function
leaves a linear program in the other; alternating the two programs from
several warm starts gives a lower bound, certified by re-evaluating ``T`` on
witnesses whose Lipschitz constants are checked (and rescaled if needed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import sparse
from scipy.optimize import linprog
from scipy.sparse.csgraph import dijkstra

from ..finite_metric.metric import Graph
from .complex import Loop


class LoopLipschitzError(ValueError):
    """The loop is too long for the requested ``lam * r`` bound, or leaves the graph."""


@dataclass
class WitnessPair:
    """Values of ``f`` and ``pi`` on the loop vertices ``vertices``."""

    vertices: list
    f: np.ndarray
    pi: np.ndarray
    lipschitz_bound: float

    def lipschitz_constants(self, dist: np.ndarray) -> tuple:
        off = dist > 0
        lf = (np.abs(self.f[:, None] - self.f[None, :])[off] / dist[off]).max(initial=0.0)
        lp = (np.abs(self.pi[:, None] - self.pi[None, :])[off] / dist[off]).max(initial=0.0)
        return float(lf), float(lp)

    def shifted(self, c1: float, c2: float) -> "WitnessPair":
        return WitnessPair(self.vertices, self.f + c1, self.pi + c2, self.lipschitz_bound)

    def to_json(self, labels=None) -> dict:
        names = self.vertices if labels is None else [labels[v] for v in self.vertices]
        return {"vertices": list(names), "f": [float(x) for x in self.f],
                "pi": [float(x) for x in self.pi], "lipschitz_bound": self.lipschitz_bound}


@dataclass
class HLambdaResult:
    value: float
    witnesses: WitnessPair
    lam: float
    r: float
    loop_length: float
    cap: float
    within_cap: bool
    start: str
    rounds: int
    history: list = field(default_factory=list)


def _stokes_terms(loop: Loop, pos: dict):
    """Induced chain as arrays (u, v, coefficient) in loop-vertex positions."""
    chain = loop.chain()
    if not chain.coeffs:
        return np.zeros(0, int), np.zeros(0, int), np.zeros(0)
    u, v, c = zip(*((pos[a], pos[b], float(w)) for (a, b), w in sorted(chain.coeffs.items())))
    return np.array(u), np.array(v), np.array(c)


def stokes_sum(loop: Loop, f, pi) -> float:
    """``T(f, pi)`` with ``f`` and ``pi`` indexed by graph vertex."""
    total = 0.0
    for (a, b), c in sorted(loop.chain().coeffs.items()):
        total += float(c) * (f[a] + f[b]) / 2 * (pi[b] - pi[a])
    return total


def _linear_coeffs(u, v, c, other: np.ndarray, m: int, which: str) -> np.ndarray:
    """Gradient of T in f (``which="f"``) or in pi for the other function fixed."""
    g = np.zeros(m)
    if which == "f":
        w = c * (other[v] - other[u]) / 2
        np.add.at(g, u, w)
        np.add.at(g, v, w)
    else:
        w = c * (other[u] + other[v]) / 2
        np.add.at(g, v, w)
        np.add.at(g, u, -w)
    return g


def _lipschitz_rows(dist: np.ndarray, L: float):
    m = len(dist)
    iu, ju = np.triu_indices(m, 1)
    k = len(iu)
    rows = np.repeat(np.arange(2 * k), 2)
    cols = np.column_stack([np.r_[iu, ju], np.r_[ju, iu]]).ravel()
    vals = np.tile([1.0, -1.0], 2 * k)
    A = sparse.csr_matrix((vals, (rows, cols)), shape=(2 * k, m))
    b = np.tile(L * dist[iu, ju], 2)
    return A, b


def _maximize(g: np.ndarray, A, b) -> np.ndarray:
    m = len(g)
    bounds = [(0, 0)] + [(None, None)] * (m - 1)
    res = linprog(-g, A_ub=A, b_ub=b, bounds=bounds, method="highs")
    if res.status != 0:
        raise RuntimeError(f"Lipschitz LP failed: {res.message}")
    return res.x


def _certify(x: np.ndarray, dist: np.ndarray, L: float) -> np.ndarray:
    off = dist > 0
    lx = (np.abs(x[:, None] - x[None, :])[off] / dist[off]).max(initial=0.0)
    if lx > L:
        x = x * (L / lx)
    return x - x[0]


def _warm_starts(g: Graph, verts: list, loop: Loop, dist: np.ndarray, r: float):
    """Witness shapes: a bump around a quarter of the loop against a distance
    function from its start, and coordinate functions when available."""
    pos = {v: i for i, v in enumerate(verts)}
    seq = [pos[v] for v in loop.vertices]
    n = len(seq)
    starts = []
    for k in sorted({0, n // 4, n // 2, (3 * n) // 4}):
        seg = sorted({seq[(k + t) % n] for t in range(max(1, n // 4) + 1)})
        f = np.maximum(0.0, 1.0 - 2.0 / r * dist[:, seg].min(axis=1))
        pi = dist[:, seq[k]] / r
        starts.append((f"bump@{k}", f, pi))
    if g.coords is not None:
        X = np.asarray(g.coords, dtype=float)[verts]
        x = (X[:, 0] - X[:, 0].min()) / r
        y = (X[:, 1] - X[:, 1].min()) / r if X.shape[1] > 1 else np.zeros(len(verts))
        starts.append(("coords", np.clip(x, 0, 1), y))
    return starts


def h_lambda_estimate(g: Graph, loop: Loop, lam: float, r: float, rounds: int = 8,
                      tol: float = 1e-6) -> HLambdaResult:
    """
    Certified lower bound for the discrete ``H_lam(r)`` on one loop.

    Parameters
    ----------
    g : Graph
    loop : Loop
        Closed walk along edges of ``g`` (vertex indices).
    lam, r : float
        The loop must have length at most ``lam * r``; witnesses are
        ``lam / r``-Lipschitz for the graph metric.
    rounds : int
        Alternating LP rounds per warm start.

    Returns
    -------
    HLambdaResult
        ``value = T(f, pi) >= 0`` evaluated on the returned witnesses; the a
        priori cap ``lam**4`` is checked with relative slack ``tol``.

    Raises
    ------
    LoopLipschitzError
        A loop step is not an edge of ``g`` or the loop is longer than ``lam * r``.
    """
    if lam <= 0 or r <= 0:
        raise ValueError("lam and r must be positive")
    wmap = {}
    for i, j, w in g.edges:
        key = (min(i, j), max(i, j))
        wmap[key] = min(float(w), wmap.get(key, np.inf))
    length = 0.0
    for a, b in loop.steps():
        if a == b:
            continue
        key = (min(a, b), max(a, b))
        if key not in wmap:
            raise LoopLipschitzError(f"loop step {a}-{b} is not an edge of the graph")
        length += wmap[key]
    if length > lam * r * (1 + 1e-12):
        raise LoopLipschitzError(f"loop length {length} exceeds lam * r = {lam * r}")

    verts = sorted(set(loop.vertices))
    pos = {v: i for i, v in enumerate(verts)}
    m = len(verts)
    dist = dijkstra(g.adjacency(), directed=False, indices=verts)[:, verts]
    L = lam / r
    u, v, c = _stokes_terms(loop, pos)
    cap = lam ** 4

    def T(f, pi):
        return float(np.sum(c * (f[u] + f[v]) / 2 * (pi[v] - pi[u]))) if len(c) else 0.0

    best = (0.0, np.zeros(m), np.zeros(m), "zero", 0)
    history = []
    if len(c):
        A, b = _lipschitz_rows(dist, L)
        for name, f, pi in _warm_starts(g, verts, loop, dist, r):
            f, pi = _certify(f, dist, L), _certify(pi, dist, L)
            if T(f, pi) < 0:
                f = -f
            val, used = T(f, pi), 0
            for k in range(rounds):
                pi = _certify(_maximize(_linear_coeffs(u, v, c, f, m, "pi"), A, b), dist, L)
                f = _certify(_maximize(_linear_coeffs(u, v, c, pi, m, "f"), A, b), dist, L)
                new, used = T(f, pi), k + 1
                if new <= val * (1 + 1e-12) + 1e-15:
                    val = max(val, new)
                    break
                val = new
            history.append((name, val))
            if T(f, pi) > best[0]:
                best = (T(f, pi), f, pi, name, used)
    value, f, pi, name, used = best
    w = WitnessPair(verts, f, pi, L)
    return HLambdaResult(value=value, witnesses=w, lam=lam, r=r, loop_length=length, cap=cap,
                         within_cap=value <= cap * (1 + tol), start=name, rounds=used,
                         history=history)


def square_loop(g: Graph, r: int, origin: tuple = (0, 0)) -> Loop:
    """Counterclockwise boundary of the ``r x r`` square in a grid graph
    labelled ``"x,y"``."""
    x0, y0 = origin
    pts = ([(x0 + t, y0) for t in range(r)] + [(x0 + r, y0 + t) for t in range(r)]
           + [(x0 + r - t, y0 + r) for t in range(r)] + [(x0, y0 + r - t) for t in range(r)])
    return Loop([g.index(f"{x},{y}") for x, y in pts])


def contour_loop(g: Graph, root: int = 0, depth: Optional[int] = None) -> Loop:
    """Depth-first contour walk of a tree from ``root``, truncated at ``depth``."""
    nbrs = g.neighbors()
    walk = [root]

    def visit(x, parent, d):
        for y in sorted(nbrs[x]):
            if y == parent or (depth is not None and d >= depth):
                continue
            walk.append(y)
            visit(y, x, d + 1)
            walk.append(x)

    visit(root, -1, 0)
    return Loop(walk)
