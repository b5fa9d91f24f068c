import itertools
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from mfill.finite_metric import (
    CapExceeded,
    DisconnectedGraph,
    FiniteMetricSpace,
    Graph,
    GroupPresentation,
    InvalidMetric,
    InvalidPresentation,
    binary_tree,
    cayley_ball,
    cycle_graph,
    delta_thickening,
    four_point_delta,
    graph_metric,
    grid_graph,
    kuratowski_embed,
    path_graph,
    random_metric,
    separated_net,
    slim_triangle_delta,
    tight_span,
    tripod_legs,
)
from mfill.finite_metric.cayley import free_reduce


# -- oracles -------------------------------------------------------------------

def four_point_oracle(D):
    """Brute force over all 4-subsets: half the gap between the two largest pairing sums."""
    best = 0
    for a, b, c, d in itertools.combinations(range(len(D)), 4):
        s = sorted([D[a][b] + D[c][d], D[a][c] + D[b][d], D[a][d] + D[b][c]], reverse=True)
        best = max(best, s[0] - s[1])
    return Fraction(best) / 2 if not isinstance(best, float) else best / 2


def nx_metric(g: Graph):
    G = nx.Graph()
    G.add_nodes_from(range(len(g)))
    for i, j, w in g.edges:
        if not G.has_edge(i, j) or G[i][j]["weight"] > w:
            G.add_edge(i, j, weight=w)
    n = len(g)
    D = np.zeros((n, n))
    for i, row in nx.all_pairs_dijkstra_path_length(G):
        for j, v in row.items():
            D[i, j] = v
    return D


def bfs_ball(identity, gens, mul, radius):
    seen = {identity: 0}
    frontier = [identity]
    for r in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for s in gens:
                y = mul(x, s)
                if y not in seen:
                    seen[y] = r
                    nxt.append(y)
        frontier = nxt
    return seen


@st.composite
def random_graphs(draw):
    n = draw(st.integers(3, 12))
    edges = [(i, i + 1, draw(st.integers(1, 4))) for i in range(n - 1)]
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(1, 4)),
                          max_size=10))
    edges += [(i, j, w) for i, j, w in extra if i != j]
    return Graph([str(i) for i in range(n)], edges)


# -- metric spaces -------------------------------------------------------------

def test_invalid_metrics():
    with pytest.raises(InvalidMetric):
        FiniteMetricSpace([[0, 1], [2, 0]])
    with pytest.raises(InvalidMetric):
        FiniteMetricSpace([[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    with pytest.raises(InvalidMetric):
        FiniteMetricSpace([[0, 0], [0, 0]])
    with pytest.raises(InvalidMetric):
        FiniteMetricSpace([[0, 1], [1, 0]], labels=["a", "a"])


def test_disconnected_graph():
    with pytest.raises(DisconnectedGraph):
        graph_metric(Graph(["a", "b", "c"], [(0, 1, 1)]))


@given(random_graphs())
def test_graph_metric_matches_networkx(g):
    m = graph_metric(g)
    assert np.allclose(m.as_float(), nx_metric(g))
    assert m.exact


def test_graph_generators():
    assert len(grid_graph(4)) == 16 and len(grid_graph(4).edges) == 24
    assert len(binary_tree(3)) == 15
    assert graph_metric(cycle_graph(6)).diameter() == 3
    assert graph_metric(path_graph(5)).diameter() == 4


# -- hyperbolicity -------------------------------------------------------------

def test_tree_is_zero_hyperbolic():
    assert four_point_delta(graph_metric(binary_tree(4))) == 0
    assert slim_triangle_delta(binary_tree(4)) == 0


def test_cycle_constants():
    assert slim_triangle_delta(cycle_graph(6)) == 1
    # four-point value of C4: d = 1, 2 on the square gives pairings 2, 2, 4
    assert four_point_delta(graph_metric(cycle_graph(4))) == 1


def test_grid_deltas_strictly_increase():
    vals = [four_point_delta(graph_metric(grid_graph(n))) for n in range(3, 9)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert all(isinstance(v, Fraction) for v in vals)


@given(st.integers(4, 9), st.integers(0, 10_000))
def test_four_point_matches_brute_force(n, seed):
    m = random_metric(n, seed)
    D = [[int(v) for v in row] for row in m.as_float()]
    assert four_point_delta(m) == four_point_oracle(D)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_grid_four_point_brute_force(n):
    m = graph_metric(grid_graph(n))
    D = [[int(v) for v in row] for row in m.as_float()]
    assert four_point_delta(m) == four_point_oracle(D)


@given(random_graphs())
def test_slim_lower_bound_vs_four_point(g):
    # slim triangles with constant s give four-point constant at most 2 s (up to rounding slack)
    m = graph_metric(g)
    assert float(four_point_delta(m)) <= 2 * float(slim_triangle_delta(g)) + 2 * max(w for *_, w in g.edges)


# -- Kuratowski embedding ------------------------------------------------------

@given(st.integers(2, 9), st.integers(0, 10_000), st.data())
def test_kuratowski_isometry_exact(n, seed, data):
    m = random_metric(n, seed)
    base = data.draw(st.sampled_from(m.labels))
    e = kuratowski_embed(m, base)
    assert np.array_equal(e.distance_matrix(), m.d)
    assert not np.any(e.coords[m.index(base)])


def test_kuratowski_fraction_metric():
    m = FiniteMetricSpace(np.array([[0, Fraction(1, 3), Fraction(1, 2)],
                                    [Fraction(1, 3), 0, Fraction(1, 2)],
                                    [Fraction(1, 2), Fraction(1, 2), 0]], dtype=object))
    e = kuratowski_embed(m, "1")
    assert (e.distance_matrix() == m.d).all()
    with pytest.raises(KeyError):
        kuratowski_embed(m, "zz")


# -- tight spans ---------------------------------------------------------------

def test_tripod():
    m = FiniteMetricSpace([[0, 3, 4], [3, 0, 5], [4, 5, 0]])
    assert tripod_legs(m) == [1, 2, 3]
    ts = tight_span(m)
    assert ts.dimension == 1
    assert sorted(ts.edge_lengths()) == [1, 2, 3]


def test_four_point_rectangle():
    d = [[0, 5, 7, 6], [5, 0, 6, 9], [7, 6, 0, 5], [6, 9, 5, 0]]
    ts = tight_span(FiniteMetricSpace(d))
    assert ts.dimension == 2
    cell = next(c for c in ts.cells if len(c) == 4)
    sides = sorted(ts.edge_lengths()[ts.edges.index(e)] for e in ts.edges if set(e) <= set(cell))
    # pairing sums 16 > 12 > 10: sides (16-12)/2 and (16-10)/2
    assert sides == [2, 2, 3, 3]


@given(st.lists(st.integers(1, 9), min_size=6, max_size=6))
def test_tight_span_four_points_oracle(ws):
    d = np.zeros((4, 4), dtype=int)
    for (i, j), w in zip(itertools.combinations(range(4), 2), ws):
        d[i, j] = d[j, i] = w
    try:
        m = FiniteMetricSpace(d)
    except InvalidMetric:
        assume(False)
    S = sorted([d[0, 1] + d[2, 3], d[0, 2] + d[1, 3], d[0, 3] + d[1, 2]], reverse=True)
    ts = tight_span(m)
    assert ts.extremality_residual(m.as_float()) <= 1e-9
    if S[0] > S[1]:
        assert ts.dimension == 2
        cell = next(c for c in ts.cells if len(c) == 4)
        sides = sorted(ts.edge_lengths()[k] for k, e in enumerate(ts.edges) if set(e) <= set(cell))
        assert sides == sorted([Fraction(S[0] - S[1], 2)] * 2 + [Fraction(S[0] - S[2], 2)] * 2)
    else:
        assert ts.dimension <= 1
    # each point's leg is its smallest Gromov product
    for x in range(4):
        leg = min(Fraction(int(d[x, y] + d[x, z] - d[y, z]), 2)
                  for y, z in itertools.combinations([i for i in range(4) if i != x], 2))
        assert leg in ts.edge_lengths() or leg == 0


@given(st.integers(3, 6), st.integers(0, 10_000))
def test_tight_span_contains_space_isometrically(n, seed):
    m = random_metric(n, seed, high=8)
    ts = tight_span(m)
    sub = ts.space.as_float()[np.ix_(ts.embedding, ts.embedding)]
    assert np.allclose(sub, m.as_float())
    assert ts.extremality_residual(m.as_float()) <= 1e-9


def test_tight_span_of_tree_metric_is_one_dimensional():
    m = graph_metric(binary_tree(2))
    assert tight_span(m).dimension == 1


# -- thickening ----------------------------------------------------------------

@given(random_graphs(), st.integers(0, 10_000))
def test_separated_net(g, seed):
    m = graph_metric(g)
    delta = 1 + seed % 4
    net = [m.index(x) for x in separated_net(m, delta)]
    D = m.as_float()
    assert all(D[i, j] >= delta for i, j in itertools.combinations(net, 2))
    assert all(D[i, net].min() < delta for i in range(len(m)))


@pytest.mark.parametrize("g,delta", [(cycle_graph(6), 2), (grid_graph(3), 1), (binary_tree(2), 1)])
def test_thickening_inclusion_and_bound(g, delta):
    th = delta_thickening(g, delta)
    n = len(g)
    assert th.inclusion == list(range(n))
    assert np.allclose(th.space.as_float()[:n, :n], graph_metric(g).as_float())
    assert 0 <= th.hausdorff <= 64 * delta
    assert th.observed_constant <= 16 + 1e-9


def test_thickening_rejects_bad_delta():
    with pytest.raises(ValueError):
        delta_thickening(cycle_graph(6), 0)


# -- Cayley balls --------------------------------------------------------------

def test_cayley_counts():
    assert len(cayley_ball(GroupPresentation(("a", "b"), ("abAB",)), 3).vertices) == 25
    assert len(cayley_ball(GroupPresentation(("a", "b")), 2).vertices) == 17


@given(st.integers(0, 5))
def test_cayley_z2_matches_lattice(r):
    g = cayley_ball(GroupPresentation(("a", "b"), ("abAB",)), r)
    steps = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    ball = bfs_ball((0, 0), steps, lambda x, s: (x[0] + s[0], x[1] + s[1]), r)
    assert len(g.vertices) == len(ball) == 2 * r * r + 2 * r + 1
    assert len(g.edges) == sum(1 for x in ball for s in steps[::2] if (x[0] + s[0], x[1] + s[1]) in ball)


@given(st.integers(0, 5))
def test_cayley_free_group(r):
    g = cayley_ball(GroupPresentation(("a", "b")), r)
    ball = bfs_ball("", "abAB", lambda w, s: free_reduce(w + s), r)
    assert len(g.vertices) == len(ball) == 2 * 3 ** r - 1
    assert sorted(g.vertices) == sorted(ball)
    # a tree: one edge fewer than vertices
    assert len(g.edges) == len(g.vertices) - 1


def _compose(p, q):
    return tuple(p[i] for i in q)


@pytest.mark.parametrize("r", [0, 1, 2, 3, 4])
def test_cayley_s3_matches_permutations(r):
    g = cayley_ball(GroupPresentation(("a", "b"), ("aa", "bb", "ababab")), r)
    a, b = (1, 0, 2), (0, 2, 1)
    ball = bfs_ball((0, 1, 2), [a, b], _compose, r)
    assert len(g.vertices) == len(ball)
    D = graph_metric(g).as_float()
    assert sorted(D[0].astype(int).tolist()) == sorted(ball.values())


@given(st.integers(2, 9), st.integers(0, 6))
def test_cayley_cyclic(n, r):
    g = cayley_ball(GroupPresentation(("a",), ("a" * n,)), r)
    ball = bfs_ball(0, [1, -1], lambda x, s: (x + s) % n, r)
    assert len(g.vertices) == len(ball)


def test_cayley_errors():
    with pytest.raises(InvalidPresentation):
        GroupPresentation(("a", "a"))
    with pytest.raises(InvalidPresentation):
        GroupPresentation(("A",))
    with pytest.raises(CapExceeded):
        cayley_ball(GroupPresentation(("a", "b")), 6, node_cap=100)
    with pytest.raises(ValueError):
        cayley_ball(GroupPresentation(("a",)), -1)
