import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from mfill.filling import (
    Chain,
    InvalidChain,
    InvalidComplex,
    Loop,
    NotFillable,
    SimplicialComplex2,
    boundary_matrices,
    boundary_of,
    filling_radius,
    is_cycle,
    kuratowski_filling_radius,
    kuratowski_neighborhood_complex,
    min_filling_area,
    plane_patch,
    rips_filling_radius,
)
from mfill.finite_metric import FiniteMetricSpace, Graph, cycle_graph, graph_metric, random_metric

OCT = [(0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4), (1, 0, 5), (2, 1, 5), (3, 2, 5), (0, 3, 5)]


def octahedron(**kw):
    return SimplicialComplex2(6, OCT, **kw)


def circle_metric(n):
    t = 2 * np.pi * np.arange(n) / n
    X = np.column_stack([np.cos(t), np.sin(t)])
    D = np.sqrt(((X[:, None] - X[None]) ** 2).sum(-1))
    np.fill_diagonal(D, 0)
    return FiniteMetricSpace(D, validate=False)


# -- oracles -------------------------------------------------------------------

def dense_d2(k):
    """Edge-by-triangle incidence built straight from the triangle list."""
    A = np.zeros((len(k.edges), len(k.triangles)))
    for t, (a, b, c) in enumerate(k.triangles):
        for u, v in ((a, b), (b, c), (c, a)):
            e = k.edges.index((min(u, v), max(u, v)))
            A[e, t] += 1 if u < v else -1
    return A


def z_vector(k, z):
    v = np.zeros(len(k.edges))
    for (u, w), c in z.coeffs.items():
        v[k.edges.index((u, w))] = float(c)
    return v


def lp_area_oracle(k, z):
    """min sum w |c| with d2 c = z via the split c = p - q."""
    A = dense_d2(k)
    w = np.array([float(x) for x in k.weights])
    res = linprog(np.concatenate([w, w]), A_eq=np.hstack([A, -A]), b_eq=z_vector(k, z), method="highs")
    return res.fun if res.status == 0 else None


def integral_area_oracle(k, z, span=2):
    """Exhaustive search over integer chains with |coefficients| <= span."""
    A = dense_d2(k)
    b = z_vector(k, z)
    w = np.array([float(x) for x in k.weights])
    C = np.array(list(itertools.product(range(-span, span + 1), repeat=len(k.triangles))))
    ok = np.all(C @ A.T == b, axis=1)
    return float((np.abs(C[ok]) @ w).min()) if ok.any() else None


def radius_oracle(k, z):
    """Smallest vertex-rule radius at which z is a boundary, by rank tests."""
    A = dense_d2(k)
    b = z_vector(k, z)
    spt = sorted({v for e in z.coeffs for v in e})
    dist = k.distances_to(spt)
    for r in sorted(set(dist.tolist())):
        keep = [t for t, tri in enumerate(k.triangles) if max(dist[list(tri)]) <= r + 1e-12]
        S = A[:, keep]
        if np.linalg.matrix_rank(np.column_stack([S, b])) == np.linalg.matrix_rank(S):
            return r
    return math.inf


# -- complexes and chains ------------------------------------------------------

def test_invalid_complexes():
    with pytest.raises(InvalidComplex):
        SimplicialComplex2(3, [(0, 1, 1)])
    with pytest.raises(InvalidComplex):
        SimplicialComplex2(3, [(0, 1, 3)])
    with pytest.raises(InvalidComplex):
        SimplicialComplex2(3, [(0, 1, 2)], weights=[0])
    with pytest.raises(InvalidChain):
        Chain(3)
    with pytest.raises(InvalidChain):
        Loop([4])


def test_chain_orientation_and_algebra():
    c = Chain(1, {(2, 1): 3, (1, 2): 1})
    assert c.coeffs == {(1, 2): -2}
    assert (c + c).coeffs == {(1, 2): -4}
    assert (c * 0).coeffs == {}
    assert (-c).coeffs == {(1, 2): 2}


@pytest.mark.parametrize("k", [octahedron(), plane_patch(None, 3, 1), plane_patch("hyperbolic7", 3),
                               plane_patch(None, 2, Fraction(1, 2), shape="disk"),
                               kuratowski_neighborhood_complex(circle_metric(8), 1.5)[0]])
def test_boundary_of_boundary(k):
    d1, d2 = boundary_matrices(k)
    assert (d1 @ d2).count_nonzero() == 0
    assert np.array_equal(d2.toarray(), dense_d2(k))


def test_loop_chain_and_cycles():
    k = octahedron()
    z = Loop([0, 1, 2, 3]).chain()
    assert is_cycle(k, z)
    assert not is_cycle(k, Chain(1, {(0, 1): 1}))
    back = Loop([0, 1, 0]).chain()
    assert back.coeffs == {}
    assert len(Loop([0, 1, 2, 0]).vertices) == 3


@given(st.lists(st.tuples(st.integers(0, 7), st.integers(-3, 3)), max_size=6))
def test_boundaries_are_cycles(terms):
    k = octahedron()
    c = Chain(2, {t: v for t, v in terms})
    assert is_cycle(k, boundary_of(k, c))


# -- filling area --------------------------------------------------------------

def test_triangle_area():
    k = SimplicialComplex2(3, [(0, 1, 2)])
    r = min_filling_area(k, Loop([0, 1, 2]).chain(), exact=True)
    assert r.area == 1 and r.exact
    assert r.certificate_gap <= 1e-12


def test_octahedron_equator():
    k = octahedron()
    z = Loop([0, 1, 2, 3]).chain()
    assert min_filling_area(k, z).area == 4
    assert min_filling_area(k, z, mode="integral").area == 4


def test_not_fillable():
    # annulus-like complex: two triangles sharing only a vertex
    k = SimplicialComplex2(5, [(0, 1, 2), (0, 3, 4)], edges=[(1, 3)])
    with pytest.raises(NotFillable):
        min_filling_area(k, Loop([0, 1, 3]).chain())
    with pytest.raises(InvalidChain):
        min_filling_area(k, Chain(1, {(0, 1): 1}))


def _random_cycle(k, seed):
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(k.triangles), size=int(rng.integers(1, 5)), replace=False)
    return boundary_of(k, Chain(2, {int(t): int(rng.choice([-2, -1, 1, 2])) for t in picks}))


@given(st.integers(0, 10_000))
def test_area_matches_linprog(seed):
    k = plane_patch(None, 3, 1)
    z = _random_cycle(k, seed)
    r = min_filling_area(k, z, exact=True)
    ref = lp_area_oracle(k, z)
    assert abs(float(r.area) - ref) <= 1e-9
    assert r.certificate_gap <= 1e-9
    assert boundary_of(k, r.chain).coeffs == z.coeffs


@given(st.integers(0, 10_000), st.sampled_from([-3, -2, 2, 3]))
def test_area_homogeneity(seed, c):
    k = plane_patch(None, 3, 1)
    z = _random_cycle(k, seed)
    assert min_filling_area(k, z * c).area == abs(c) * min_filling_area(k, z).area


@given(st.integers(0, 10_000))
def test_integral_area_brute_force(seed):
    k = octahedron(weights=[1, 2, 1, 3, 2, 1, 1, 2])
    rng = np.random.default_rng(seed)
    c = Chain(2, {int(t): int(rng.choice([-1, 1])) for t in rng.choice(8, size=3, replace=False)})
    z = boundary_of(k, c)
    if not z.coeffs:
        return
    r = min_filling_area(k, z, mode="integral")
    assert float(r.area) == integral_area_oracle(k, z)
    assert r.integrality_gap is None or r.integrality_gap >= -1e-12


# -- filling radius ------------------------------------------------------------

def test_radius_vertex_rule_on_triangle():
    k = SimplicialComplex2(3, [(0, 1, 2)], coords=[(0, 0), (1, 0), (0, 1)])
    assert filling_radius(k, Loop([0, 1, 2]).chain()) == 0


def test_radius_octahedron():
    g = Graph.from_labelled_edges([(a, b) for a, b, c in OCT] + [(b, c) for a, b, c in OCT],
                                  vertices=list(range(6)))
    k = octahedron(metric=graph_metric(g))
    assert filling_radius(k, Loop([0, 1, 2, 3]).chain()) == 1


@given(st.integers(0, 10_000))
def test_radius_matches_rank_oracle(seed):
    k = plane_patch(None, 4, 1)
    z = _random_cycle(k, seed)
    assert filling_radius(k, z) == pytest.approx(radius_oracle(k, z))


@pytest.mark.parametrize("n", [6, 7, 8, 9, 10, 12])
def test_rips_on_cycle_graphs(n):
    # the loop of C_n survives in the Rips complex exactly below scale n/3
    m = graph_metric(cycle_graph(n))
    z = Loop(list(range(n)))
    assert rips_filling_radius(m, z) == math.ceil(n / 3) / 2
    assert kuratowski_filling_radius(m, z) == math.ceil(n / 3) / 2


@pytest.mark.parametrize("n", [12, 24])
def test_two_routes_agree_on_circles(n):
    m = circle_metric(n)
    z = Loop(list(range(n)))
    rips = rips_filling_radius(m, z)
    direct = kuratowski_filling_radius(m, z)
    assert abs(rips - math.sqrt(3) / 2) <= 0.05
    assert abs(direct - rips) <= 0.07
    assert direct <= rips + 1e-9


@given(st.integers(4, 7), st.integers(0, 1000))
def test_rips_radius_bounded_by_half_diameter(n, seed):
    m = random_metric(n, seed)
    z = Loop(list(range(n)))
    r = rips_filling_radius(m, z)
    assert 0 <= r <= float(m.diameter()) / 2 + 1e-9


def test_kuratowski_complex_is_a_complex():
    k, centres = kuratowski_neighborhood_complex(circle_metric(8), 1.5)
    assert all(len(s) in (1, 2, 3) for s in centres)
    d1, d2 = boundary_matrices(k)
    assert (d1 @ d2).count_nonzero() == 0
