import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.sparse.csgraph import dijkstra

from mfill.filling import (
    Loop,
    LoopLipschitzError,
    MeshTooCoarse,
    boundary_matrices,
    contour_loop,
    disk_cycle,
    h_lambda_estimate,
    isoperimetric_profile,
    loop_length,
    min_filling_area,
    plane_patch,
    ring_loops,
    semi_ellipticity_check,
    square_loop,
    stokes_sum,
    trace_polygon,
)
from mfill.finite_metric import binary_tree, grid_graph
from mfill.normed_plane import area_density, diamond_norm, square_norm

QUARTER_PI = 1 / (4 * math.pi)


def grid_xy(g):
    return np.array([[int(t) for t in lab.split(",")] for lab in g.vertices])


# -- discrete Stokes pairing ---------------------------------------------------

@pytest.mark.parametrize("r", [1, 3, 8])
def test_stokes_is_signed_area_for_linear_functions(r):
    # trapezoid rule integrates x dy exactly along grid edges: Green's theorem
    g = grid_graph(r + 1)
    xy = grid_xy(g)
    z = square_loop(g, r)
    assert stokes_sum(z, xy[:, 0], xy[:, 1]) == pytest.approx(r * r)
    assert stokes_sum(Loop(z.vertices[::-1]), xy[:, 0], xy[:, 1]) == pytest.approx(-r * r)


@given(st.lists(st.integers(0, 24), min_size=2, max_size=12), st.integers(0, 1000))
def test_backtracking_loops_pair_to_zero(path, seed):
    walk = path + path[-2::-1]
    rng = np.random.default_rng(seed)
    f, pi = rng.normal(size=25), rng.normal(size=25)
    if len(set(walk)) < 2:
        return
    assert stokes_sum(Loop(walk), f, pi) == pytest.approx(0.0, abs=1e-12)


@given(st.integers(0, 1000), st.floats(-5, 5), st.floats(-5, 5))
def test_stokes_shift_invariance(seed, c1, c2):
    g = grid_graph(5)
    z = square_loop(g, 4)
    rng = np.random.default_rng(seed)
    f, pi = rng.normal(size=25), rng.normal(size=25)
    assert stokes_sum(z, f + c1, pi + c2) == pytest.approx(stokes_sum(z, f, pi), abs=1e-9)


# -- H_lambda estimator --------------------------------------------------------

@pytest.mark.parametrize("r", [4, 8, 16])
def test_grid_estimate_is_certified(r):
    lam = 8
    g = grid_graph(r + 1)
    z = square_loop(g, r)
    res = h_lambda_estimate(g, z, lam, r)
    # the explicit pair lam/r (x + y), lam/r (y - x) is admissible and gives 2 lam^2
    xy = grid_xy(g)
    explicit = stokes_sum(z, lam / r * (xy[:, 0] + xy[:, 1]), lam / r * (xy[:, 1] - xy[:, 0]))
    assert explicit == pytest.approx(2 * lam ** 2)
    assert res.value >= explicit - 1e-9
    assert 0 <= res.value <= lam ** 4 and res.within_cap
    # witnesses are lam/r-Lipschitz on the loop vertices for the graph metric
    w = res.witnesses
    D = dijkstra(g.adjacency(), directed=False, indices=w.vertices)[:, w.vertices]
    off = D > 0
    for h in (w.f, w.pi):
        assert (np.abs(h[:, None] - h[None, :])[off] / D[off]).max() <= lam / r * (1 + 1e-9)
    # reported value is the pairing of the reported witnesses
    f = np.zeros(len(g))
    pi = np.zeros(len(g))
    f[w.vertices], pi[w.vertices] = w.f, w.pi
    assert stokes_sum(z, f, pi) == pytest.approx(res.value)
    s = w.shifted(3.0, -2.0)
    f[w.vertices], pi[w.vertices] = s.f, s.pi
    assert stokes_sum(z, f, pi) == pytest.approx(res.value)


@pytest.mark.parametrize("depth", [2, 3, 4])
def test_tree_contours_vanish(depth):
    g = binary_tree(depth)
    z = contour_loop(g)
    assert len(z.vertices) == 2 * (len(g) - 1)
    res = h_lambda_estimate(g, z, 8, len(z.vertices) / 8)
    assert res.value == 0


def test_loop_errors():
    g = grid_graph(5)
    with pytest.raises(LoopLipschitzError):
        h_lambda_estimate(g, Loop([0, 6, 12]), 8, 4)
    with pytest.raises(LoopLipschitzError):
        h_lambda_estimate(g, square_loop(g, 4), 1, 4)
    with pytest.raises(ValueError):
        h_lambda_estimate(g, square_loop(g, 4), 0, 4)


# -- patches -------------------------------------------------------------------

def test_square_patch_counts_and_weights():
    k = plane_patch(None, 1, Fraction(1, 2))
    assert len(k.triangles) == 8
    assert k.total_weight() == 1
    sq = plane_patch(square_norm(), 2, Fraction(1, 2), mu="m*")
    assert sq.total_weight() == 4
    ht = plane_patch(square_norm(), 2, Fraction(1, 2), mu="ht")
    assert float(ht.total_weight()) == pytest.approx(4 * float(area_density(square_norm(), "ht")))


@pytest.mark.parametrize("extent,mesh", [(3, 1), (2, Fraction(1, 2)), (4, Fraction(1, 2))])
def test_disk_rings(extent, mesh):
    k = plane_patch(None, extent, mesh, shape="disk")
    rings = k.meta["rings"]
    assert [len(r) for r in rings] == [1] + [6 * j for j in range(1, len(rings))]
    d1, d2 = boundary_matrices(k)
    assert (d1 @ d2).count_nonzero() == 0
    # ring j bounds the union of the inner triangles
    for z in ring_loops(k):
        assert min_filling_area(k, z.chain()).area > 0


def test_hyperbolic_ring_growth():
    k = plane_patch("hyperbolic7", 5)
    sizes = [len(r) for r in k.meta["rings"]]
    # vertex spheres of the {3,7} tiling: a_1 = 7, a_2 = 21, a_{n+1} = 3 a_n - a_{n-1}
    expect = [1, 7, 21]
    while len(expect) < len(sizes):
        expect.append(3 * expect[-1] - expect[-2])
    assert sizes == expect
    deg = k.degrees
    interior = [v for r in k.meta["rings"][:-1] for v in r]
    assert all(deg[v] == 7 for v in interior)


@pytest.mark.parametrize("r", [3, 5])
def test_disk_cycle_area(r):
    k = plane_patch(None, 2 * r + 2, 1, centered=True)
    res = min_filling_area(k, disk_cycle(k, r))
    assert abs(float(res.area) / (math.pi * r * r) - 1) <= 0.15


def test_trace_polygon():
    k = plane_patch(square_norm(), 6, 1, mu="m*", centered=True)
    z = trace_polygon(k, [(1, 0), (0, 1), (-1, 0), (0, -1)])
    assert min_filling_area(k, z.chain()).area == 2
    with pytest.raises(MeshTooCoarse):
        trace_polygon(k, [(Fraction(1, 2), 0), (0, 1), (-1, 0)])


# -- profiles ------------------------------------------------------------------

def test_euclidean_profile_constant():
    k = plane_patch(None, 8, Fraction(1, 2), shape="disk")
    prof = isoperimetric_profile(k, ring_loops(k, range(4, 17, 4)))
    assert abs(prof.coefficient - QUARTER_PI) / QUARTER_PI <= 0.15
    assert prof.verdict.startswith("quadratic")
    assert prof.exponent == pytest.approx(2, abs=0.1)


def test_hyperbolic_profile_is_subquadratic():
    k = plane_patch("hyperbolic7", 4)
    prof = isoperimetric_profile(k, ring_loops(k))
    assert prof.strictly_decreasing
    assert prof.verdict == "subquadratic"


def test_loop_length_with_norm():
    k = plane_patch(None, 4, 1)
    z = Loop([0, 1, 6, 5])
    assert loop_length(k, z) == pytest.approx(4)
    assert loop_length(k, z, diamond_norm()) == pytest.approx(4)


@pytest.mark.parametrize("norm,region", [
    (square_norm(), [(0, 0), (1, 0), (1, 1), (0, 1)]),
    (square_norm(), [(1, 0), (0, 1), (-1, 0), (0, -1)]),
    (None, [(0, 0), (2, 0), (0, 2)]),
])
def test_semi_ellipticity_passes(norm, region):
    res = semi_ellipticity_check(norm, region)
    assert res.verdict == "PASS"
    assert res.ratio >= 0.95
    assert not res.experimental


def test_semi_ellipticity_hausdorff_is_experimental():
    res = semi_ellipticity_check(square_norm(), [(0, 0), (1, 0), (1, 1), (0, 1)], mu="b")
    assert res.experimental
