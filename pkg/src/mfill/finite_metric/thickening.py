"""
Separated nets and the thickening of a graph by glued injective envelopes.

Around every point z of a maximal delta-separated net the 8 delta ball is
replaced by (a discretization of) its injective envelope X_z, taken for the
induced length metric of the ball. Two envelope points x in X_z and x' in
X_z' are at distance

    rho(x, x') = min over y in B_z, y' in B_z' of
                 d_z(x, y) + d_X(y, y') + d_z'(y', x'),

points of the same envelope at ``min(d_z, rho)``, and copies of the same
graph vertex are identified. A shortest-path closure turns this into a
metric; it never shortens distances between graph vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.sparse.csgraph import shortest_path

from ..config import cap
from .metric import CapExceeded, FiniteMetricSpace, Graph, graph_metric
from .tight_span import tight_span


def separated_net(m: FiniteMetricSpace, delta) -> list:
    """
    Greedy maximal ``delta``-separated subset, scanned in label order.

    Net points are pairwise at distance >= delta and every point lies within
    distance < delta of the net.
    """
    if not delta > 0:
        raise ValueError("delta must be positive")
    d = m.d
    chosen = []
    for i in range(len(m)):
        if all(d[i, j] >= delta for j in chosen):
            chosen.append(i)
    return [m.labels[i] for i in chosen]


def _greedy_indices(D: np.ndarray, keep: list, candidates: list, r: float) -> list:
    """Extend ``keep`` greedily by candidates at distance >= r from everything kept."""
    out = list(keep)
    for c in candidates:
        if len(out) == 0 or D[c, out].min() >= r:
            out.append(c)
    return out


@dataclass
class Thickening:
    """
    Result of :func:`delta_thickening`.

    ``space`` lists the graph vertices first (``inclusion[i] == i``) and then
    the retained envelope points. ``hausdorff`` is the Hausdorff distance
    from the vertex set; ``observed_constant`` is the largest envelope
    diameter divided by delta.
    """

    space: FiniteMetricSpace
    inclusion: list
    net: list
    piece_sizes: list
    hausdorff: float
    observed_constant: float
    delta: float
    notes: list = field(default_factory=list)


def delta_thickening(g: Graph, delta, sample_density: Optional[float] = None) -> Thickening:
    """
    Glue discretized injective envelopes of ``8 delta``-balls over a net.

    Parameters
    ----------
    g : Graph
    delta : float
    sample_density : float, optional
        Spacing inside each envelope before pruning; defaults to ``delta / 4``.
        Non-vertex envelope points are pruned to a ``delta / 4``-net.

    Raises
    ------
    CapExceeded
        When a ball has more points than the tight-span cap, or the glued
        space is larger than ``thickening_points``.
    """
    delta = float(delta)
    X = graph_metric(g)
    DX = X.as_float()
    n = len(X)
    net = [X.index(z) for z in separated_net(X, delta)]
    h = sample_density or delta / 4
    limit = cap("tight_span_points")

    # per piece: ball vertex indices and envelope points (sup metric)
    pieces = []
    for z in net:
        ball = [int(i) for i in np.flatnonzero(DX[z] <= 8 * delta + 1e-12)]
        if len(ball) > limit:
            raise CapExceeded(f"ball around {X.labels[z]} has {len(ball)} points (cap {limit})")
        dz = graph_metric(g.induced(ball))
        ts = tight_span(dz, h)
        Dz = ts.space.as_float()
        nb = len(ball)
        extra = _greedy_indices(Dz, list(range(nb)), list(range(nb, len(Dz))), delta / 4)
        Dz = Dz[np.ix_(extra, extra)]
        pieces.append((ball, Dz))

    total = n + sum(len(Dz) - len(ball) for ball, Dz in pieces)
    if total > cap("thickening_points"):
        raise CapExceeded(f"thickening has {total} points (cap {cap('thickening_points')})")

    # global ids: vertices keep their index, new envelope points are appended
    gid = []
    nxt = n
    for ball, Dz in pieces:
        ids = list(ball) + list(range(nxt, nxt + len(Dz) - len(ball)))
        nxt += len(Dz) - len(ball)
        gid.append(ids)

    # h_p(w): distance from piece point p to graph vertex w through its ball
    H = []
    for (ball, Dz), ids in zip(pieces, gid):
        nb = len(ball)
        H.append((Dz[:, :nb][:, :, None] + DX[ball][None, :, :]).min(axis=1))

    D = np.full((total, total), np.inf)
    D[:n, :n] = DX
    for a, ((ball_a, Dz_a), ids_a) in enumerate(zip(pieces, gid)):
        ia = np.array(ids_a)
        D[np.ix_(ia, np.arange(n))] = np.minimum(D[np.ix_(ia, np.arange(n))], H[a])
        D[np.ix_(np.arange(n), ia)] = D[np.ix_(ia, np.arange(n))].T
        for b, ((ball_b, Dz_b), ids_b) in enumerate(zip(pieces, gid)):
            if b < a:
                continue
            ib = np.array(ids_b)
            nb_b = len(ball_b)
            # rho(x, x') = min_{y'} h_x(y') + d_b(y', x')
            rho = (H[a][:, ball_b][:, :, None] + Dz_b[:nb_b][None, :, :]).min(axis=1)
            if a == b:
                rho = np.minimum(rho, Dz_a)
            block = np.minimum(D[np.ix_(ia, ib)], rho)
            D[np.ix_(ia, ib)] = block
            D[np.ix_(ib, ia)] = block.T
    np.fill_diagonal(D, 0.0)
    D = np.minimum(D, D.T)
    D = shortest_path(D, method="FW", directed=False)

    if np.abs(D[:n, :n] - DX).max() > 1e-9 * max(1.0, DX.max()):
        raise ArithmeticError("thickening changed a distance between graph vertices")
    haus = float(D[n:, :n].min(axis=1).max()) if total > n else 0.0
    if haus > 64 * delta + 1e-9:
        raise ArithmeticError(f"Hausdorff distance {haus} exceeds 64 delta")
    obs = max(float(Dz.max()) for _, Dz in pieces) / delta
    labels = list(X.labels) + [f"e{k}" for k in range(total - n)]
    D[:n, :n] = DX
    space = FiniteMetricSpace(D, labels, validate=False)
    return Thickening(space=space, inclusion=list(range(n)), net=[X.labels[z] for z in net],
                      piece_sizes=[len(Dz) for _, Dz in pieces], hausdorff=haus,
                      observed_constant=obs, delta=delta)
