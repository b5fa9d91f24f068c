import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from shapely import affinity
from shapely.geometry import LineString, Point, Polygon

from mfill.normed_plane import (
    EnclosureError,
    InvalidPolygon,
    PiScalar,
    PolygonalNorm,
    alpha_v,
    area_density,
    chebyshev_radius,
    diamond_norm,
    gauge,
    hexagon_norm,
    isoperimetric_ratio,
    isoperimetrix,
    jacobian2,
    jung_constant,
    min_enclosing_parallelogram_area,
    norm_invariants,
    polar_dual,
    random_symmetric_polygon,
    regular_polygon_norm,
    self_perimeter,
    square_norm,
)

QUARTER_PI = 1 / (4 * math.pi)
seeds = st.integers(0, 10_000)
halves = st.integers(2, 8)


# -- shapely oracles ----------------------------------------------------------

def shp(norm):
    return Polygon([tuple(map(float, v)) for v in norm.vertices])


def gauge_oracle(poly, v):
    """Norm of v by intersecting the ray through v with the ball boundary."""
    v = np.asarray(v, float)
    nv = np.hypot(*v)
    if nv == 0:
        return 0.0
    far = LineString([(0, 0), tuple(v / nv * 100)])
    hit = far.intersection(poly.exterior)
    pts = [hit] if hit.geom_type == "Point" else list(hit.geoms)
    r = max(np.hypot(p.x, p.y) for p in pts)
    return nv / r


def chebyshev_oracle(poly, pts, iters=60):
    """Smallest r with a common point in all translates p + r B (bisection)."""
    lo, hi = 0.0, 10.0
    for _ in range(iters):
        r = 0.5 * (lo + hi)
        inter = None
        for p in pts:
            ball = affinity.translate(affinity.scale(poly, r, r, origin=(0, 0)), float(p[0]), float(p[1]))
            inter = ball if inter is None else inter.intersection(ball)
        if inter.is_empty or inter.area < 1e-14 and inter.length < 1e-12 and not isinstance(inter, Point):
            lo = r
        else:
            hi = r
    return hi


def min_parallelogram_oracle(norm, steps=360, refine=3):
    """Smallest enclosing centred parallelogram area by scanning pairs of side normals."""
    V = np.array([[float(x), float(y)] for x, y in norm.vertices])

    def areas(t1, t2):
        h1 = (np.column_stack([np.cos(t1), np.sin(t1)]) @ V.T).max(axis=1)
        h2 = (np.column_stack([np.cos(t2), np.sin(t2)]) @ V.T).max(axis=1)
        s = np.abs(np.sin(t1[:, None] - t2[None, :]))
        with np.errstate(divide="ignore"):
            A = 4 * h1[:, None] * h2[None, :] / s
        A[~np.isfinite(A)] = np.inf
        return A

    t1 = t2 = np.linspace(0, np.pi, steps, endpoint=False)
    width = np.pi / steps
    for _ in range(refine + 1):
        A = areas(t1, t2)
        i, j = np.unravel_index(np.argmin(A), A.shape)
        best = A[i, j]
        c1, c2 = t1[i], t2[j]
        t1 = np.linspace(c1 - 2 * width, c1 + 2 * width, 201)
        t2 = np.linspace(c2 - 2 * width, c2 + 2 * width, 201)
        width /= 50
    return best


# -- exact fixtures ----------------------------------------------------------

def test_exact_perimeters():
    assert self_perimeter(square_norm()) == 8
    assert self_perimeter(diamond_norm()) == 8
    assert self_perimeter(hexagon_norm()) == 6
    assert isinstance(self_perimeter(hexagon_norm()), Fraction)


def test_exact_densities_square():
    sq = square_norm()
    assert area_density(sq, "b") == PiScalar(Fraction(1, 4), 1)
    assert area_density(sq, "ht") == PiScalar(Fraction(2), -1)
    assert area_density(sq, "m*") == PiScalar(Fraction(1), 0)
    assert min_enclosing_parallelogram_area(sq) == 4


def test_exact_densities_diamond_and_hexagon():
    d = diamond_norm()
    assert area_density(d, "b") == PiScalar(Fraction(1, 2), 1)
    assert area_density(d, "ht") == PiScalar(Fraction(4), -1)
    assert area_density(d, "m*") == PiScalar(Fraction(2), 0)
    h = hexagon_norm()
    assert h.area == 3
    assert area_density(h, "b") == PiScalar(Fraction(1, 3), 1)
    assert area_density(h, "m*") == 1


def test_pi_scalar_render():
    assert PiScalar(Fraction(1, 4), 1).render() == {"decimal": repr(math.pi / 4), "exact": "1/4*pi"}
    assert PiScalar(Fraction(2), -1).render()["exact"] == "2/pi"
    assert float(jacobian2(Fraction(4))) == pytest.approx(math.pi / 4)
    assert float(jacobian2(None, unbounded=True)) == 0.0
    with pytest.raises(ValueError):
        jacobian2(0)


def test_jung_exact_values():
    assert jung_constant(square_norm()).exact == 1
    assert jung_constant(diamond_norm()).exact == 1
    assert jung_constant(hexagon_norm()).exact == Fraction(4, 3)
    je = jung_constant(regular_polygon_norm(64))
    assert abs(je.value - 2 / math.sqrt(3)) <= 1e-2
    assert je.lo <= je.hi


def test_alpha_exact():
    assert alpha_v(square_norm()).exact == Fraction(1, 8)
    assert alpha_v(hexagon_norm()).exact == Fraction(1, 8)
    a = alpha_v(regular_polygon_norm(64))
    assert a.lo <= a.hi
    assert Fraction(3, 32) <= a.lo


def test_invalid_polygons():
    with pytest.raises(InvalidPolygon):
        PolygonalNorm([(1, 0), (0, 1), (-1, 0)])
    with pytest.raises(InvalidPolygon):
        PolygonalNorm([(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -2)])
    with pytest.raises(InvalidPolygon):
        regular_polygon_norm(5)


def test_chebyshev_radius_square_exact():
    r, c = chebyshev_radius(square_norm(), [(0, 0), (2, 0), (0, 2)], exact=True)
    assert r == 1
    assert c == (1, 1)


def test_norm_invariants_record():
    rep = norm_invariants(hexagon_norm())
    assert rep.self_perimeter == 6
    assert rep.jung.exact == Fraction(4, 3)
    assert set(rep.densities) == {"hausdorff", "holmes_thompson", "mass_star"}


def test_enclosure_error_type():
    assert issubclass(EnclosureError, ArithmeticError)


# -- oracle comparisons ------------------------------------------------------

@pytest.mark.parametrize("norm", [square_norm(), hexagon_norm(), regular_polygon_norm(8),
                                  random_symmetric_polygon(5, 3)])
def test_jung_witness_matches_shapely(norm):
    j = jung_constant(norm)
    poly = shp(norm)
    pts = [tuple(map(float, p)) for p in j.witness]
    diam = max(gauge_oracle(poly, np.subtract(p, q)) for p, q in itertools.combinations(pts, 2))
    assert diam <= 2 + 1e-6
    r = chebyshev_oracle(poly, pts)
    assert r == pytest.approx(float(j.value), abs=1e-6)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_jung_upper_bound_against_sampling(seed):
    norm = random_symmetric_polygon(4, seed)
    poly = shp(norm)
    j = jung_constant(norm)
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(40):
        pts = rng.normal(size=(3, 2))
        diam = max(gauge_oracle(poly, p - q) for p, q in itertools.combinations(pts, 2))
        pts *= 2 / diam
        best = max(best, chebyshev_oracle(poly, pts, iters=40))
    assert best <= j.hi + 1e-6
    assert 1 <= j.lo <= j.hi <= 4 / 3 + 1e-12


@given(halves, seeds)
def test_gauge_matches_shapely(k, seed):
    norm = random_symmetric_polygon(k, seed)
    poly = shp(norm)
    rng = np.random.default_rng(seed)
    for v in rng.normal(size=(5, 2)):
        assert float(gauge(norm, v)) == pytest.approx(gauge_oracle(poly, v), rel=1e-9)


@given(halves, seeds)
def test_mass_star_against_parallelogram_scan(k, seed):
    norm = random_symmetric_polygon(k, seed)
    exact = float(min_enclosing_parallelogram_area(norm))
    scan = min_parallelogram_oracle(norm)
    assert exact <= scan + 1e-9
    assert scan <= exact * (1 + 1e-6)


# -- invariants as properties ------------------------------------------------

@given(halves, seeds)
def test_perimeter_bounds(k, seed):
    p = self_perimeter(random_symmetric_polygon(k, seed))
    assert 6 <= p <= 8


@given(halves, seeds)
def test_area_definition_inequalities(k, seed):
    n = random_symmetric_polygon(k, seed)
    ht = float(area_density(n, "ht"))
    assert ht <= float(area_density(n, "b")) + 1e-12
    assert ht <= float(area_density(n, "m*")) + 1e-12


@given(halves, seeds)
def test_holmes_thompson_equality(k, seed):
    n = random_symmetric_polygon(k, seed)
    assert abs(float(isoperimetric_ratio(n, "ht")) - QUARTER_PI) <= 1e-12
    assert float(isoperimetric_ratio(n, "m*")) >= QUARTER_PI - 1e-12


@given(halves, seeds)
def test_polar_involution(k, seed):
    n = random_symmetric_polygon(k, seed)
    assert polar_dual(polar_dual(n)) == n


@given(halves, seeds, st.lists(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), min_size=2, max_size=2))
def test_gauge_is_a_norm(k, seed, vs):
    n = random_symmetric_polygon(k, seed)
    (a, b), (c, d) = vs
    u, v = (Fraction(a), Fraction(b)), (Fraction(c), Fraction(d))
    assert gauge(n, (u[0] + v[0], u[1] + v[1])) <= gauge(n, u) + gauge(n, v)
    assert gauge(n, (-u[0], -u[1])) == gauge(n, u)
    assert gauge(n, (3 * u[0], 3 * u[1])) == 3 * gauge(n, u)


@given(halves, seeds)
def test_isoperimetrix_perimeter_identity(k, seed):
    n = random_symmetric_polygon(k, seed)
    iso = isoperimetrix(n)
    from mfill.normed_plane import polygon_perimeter
    assert polygon_perimeter(n, iso.vertices) == 2 * polar_dual(n).area


@given(st.sampled_from([8, 16, 32, 64]))
def test_regular_polygon_densities_approach_one(m):
    n = regular_polygon_norm(m)
    for mu in ("b", "ht", "m*"):
        assert abs(float(area_density(n, mu)) - 1) <= 5 / m
