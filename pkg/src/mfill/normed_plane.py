"""
Two-dimensional normed spaces with polygonal unit balls.

A norm is stored as the counterclockwise vertex list of its unit ball B.
Coordinates are kept as :class:`fractions.Fraction` whenever the input is
rational, so gauges, perimeters, polar duals and Lebesgue areas come out
exact; float inputs (for instance regular polygons approximating the disk)
flow through the same code in floating point.

Area densities involve pi, which is carried symbolically by
:class:`PiScalar` so that identities such as ``density * |B| == pi`` stay
exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from scipy import sparse

from .lp import simplex_exact, solve_lp

Number = Union[int, float, Fraction]

AREA_DEFINITIONS = ("hausdorff", "holmes_thompson", "mass_star")
_MU_ALIASES = {
    "b": "hausdorff", "hausdorff": "hausdorff",
    "ht": "holmes_thompson", "holmes_thompson": "holmes_thompson",
    "m*": "mass_star", "mass_star": "mass_star", "m": "mass_star",
}


class InvalidPolygon(ValueError):
    """Raised for vertex lists that do not describe a symmetric convex ball."""


class JungClampError(ArithmeticError):
    """The Jung computation left the interval [1, 4/3]."""


class EnclosureError(ArithmeticError):
    """The Jung enclosure is wider than the requested resolution."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def area_definition(tag: str) -> str:
    """Normalize an area-definition tag (``b``, ``ht``, ``m*`` or full name)."""
    try:
        return _MU_ALIASES[tag.lower()]
    except KeyError:
        raise ValueError(f"unknown area definition {tag!r}") from None


def as_number(v) -> Number:
    """Coerce ints, decimal strings and ``[p, q]`` pairs to Fractions; keep floats."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (bool,)):
        raise TypeError("boolean is not a coordinate")
    if isinstance(v, (int, np.integer)):
        return Fraction(int(v))
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return Fraction(int(v[0]), int(v[1]))
    if isinstance(v, (float, np.floating)):
        return float(v)
    raise TypeError(f"cannot interpret {v!r} as a number")


def is_exact(v) -> bool:
    return isinstance(v, (Fraction, int))


# --------------------------------------------------------------------------
# symbolic multiples of powers of pi


@dataclass(frozen=True)
class PiScalar:
    """The number ``coef * pi**power``; exact when ``coef`` is a Fraction."""

    coef: Number
    power: int = 0

    def __float__(self) -> float:
        return float(self.coef) * math.pi ** self.power

    @property
    def exact(self) -> bool:
        return is_exact(self.coef)

    def _other(self, other):
        if isinstance(other, PiScalar):
            return other
        return PiScalar(as_number(other), 0)

    def __mul__(self, other):
        o = self._other(other)
        return PiScalar(self.coef * o.coef, self.power + o.power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return PiScalar(self.coef / o.coef, self.power - o.power)

    def __rtruediv__(self, other):
        return self._other(other) / self

    def __eq__(self, other):
        if isinstance(other, (PiScalar, int, float, Fraction)):
            o = self._other(other)
            if self.exact and o.exact:
                if self.coef == 0 or o.coef == 0:
                    return self.coef == o.coef
                return self.coef == o.coef and self.power == o.power
            return float(self) == float(o)
        return NotImplemented

    def __hash__(self):
        return hash((self.coef, self.power))

    def __lt__(self, other):
        return float(self) < float(self._other(other))

    def __le__(self, other):
        return self == other or float(self) <= float(self._other(other))

    def __gt__(self, other):
        return float(self) > float(self._other(other))

    def __ge__(self, other):
        return self == other or float(self) >= float(self._other(other))

    def render(self) -> dict:
        """Decimal and (when available) exact rendering for reports."""
        out = {"decimal": repr(float(self))}
        if self.exact:
            c = Fraction(self.coef)
            if self.power == 0 or c == 0:
                out["exact"] = str(c)
            else:
                p = "pi" if abs(self.power) == 1 else f"pi^{abs(self.power)}"
                out["exact"] = f"{c}*{p}" if self.power > 0 else f"{c}/{p}"
        return out


# --------------------------------------------------------------------------
# polygon helpers


def _cross(p, q):
    return p[0] * q[1] - p[1] * q[0]


def _half(p) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2 pi)
    return 0 if (p[1] > 0 or (p[1] == 0 and p[0] > 0)) else 1


def _angle_key(p):
    """Exact sort key by polar angle in [0, 2 pi)."""

    class _Key:
        __slots__ = ("p", "h")

        def __init__(self, p):
            self.p, self.h = p, _half(p)

        def __lt__(self, other):
            if self.h != other.h:
                return self.h < other.h
            return _cross(self.p, other.p) > 0

    return _Key(p)


def shoelace_area(points: Sequence) -> Number:
    """Signed area of a closed polygon (positive when counterclockwise)."""
    n = len(points)
    s = sum((_cross(points[i], points[(i + 1) % n]) for i in range(n)), Fraction(0))
    return s / 2


def _tolerance(points) -> float:
    if all(is_exact(c) for p in points for c in p):
        return 0.0
    scale = max(abs(float(c)) for p in points for c in p)
    return 1e-12 * scale * scale


class PolygonalNorm:
    """
    A norm on the plane whose unit ball is a centrally symmetric polygon.

    Parameters
    ----------
    vertices : sequence of pairs
        Vertices of the unit ball in any order. Entries may be ints,
        Fractions, decimal strings, ``[p, q]`` rational pairs or floats.

    Raises
    ------
    InvalidPolygon
        When the vertices are not an even number (at least 4) of points in
        strictly convex position, symmetric about the origin.
    """

    def __init__(self, vertices: Iterable):
        pts = [(as_number(x), as_number(y)) for x, y in vertices]
        if len(pts) < 4 or len(pts) % 2:
            raise InvalidPolygon(f"need an even vertex count >= 4, got {len(pts)}")
        if any(p[0] == 0 and p[1] == 0 for p in pts):
            raise InvalidPolygon("origin listed as a vertex")
        pts.sort(key=_angle_key)
        self.vertices: tuple = tuple(pts)
        self._validate()

    def _validate(self):
        pts = self.vertices
        n = len(pts)
        eps = _tolerance(pts)
        half = n // 2
        for i in range(half):
            p, q = pts[i], pts[i + half]
            if abs(p[0] + q[0]) > math.sqrt(eps) or abs(p[1] + q[1]) > math.sqrt(eps):
                raise InvalidPolygon("vertex set is not symmetric about the origin")
        for i in range(n):
            p, q, r = pts[i], pts[(i + 1) % n], pts[(i + 2) % n]
            if _cross(p, q) <= eps:
                raise InvalidPolygon("origin is not strictly interior or vertices repeat")
            if _cross((q[0] - p[0], q[1] - p[1]), (r[0] - q[0], r[1] - q[1])) <= eps:
                raise InvalidPolygon(f"vertices {p}, {q}, {r} are not in strictly convex position")

    @property
    def exact(self) -> bool:
        return all(is_exact(c) for p in self.vertices for c in p)

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        return isinstance(other, PolygonalNorm) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"PolygonalNorm({[tuple(map(str, p)) for p in self.vertices]})"

    @cached_property
    def dual_vertices(self) -> tuple:
        """Vertices of the polar body, one per edge, counterclockwise."""
        out = []
        n = len(self.vertices)
        for i in range(n):
            p, q = self.vertices[i], self.vertices[(i + 1) % n]
            det = _cross(p, q)
            out.append(((q[1] - p[1]) / det, (p[0] - q[0]) / det))
        return tuple(out)

    @cached_property
    def dual_array(self) -> np.ndarray:
        return np.array([[float(a), float(b)] for a, b in self.dual_vertices])

    @cached_property
    def area(self) -> Number:
        return shoelace_area(self.vertices)

    def scaled(self, t: Number) -> "PolygonalNorm":
        t = as_number(t)
        return PolygonalNorm([(t * x, t * y) for x, y in self.vertices])

    def to_float(self) -> "PolygonalNorm":
        return PolygonalNorm([(float(x), float(y)) for x, y in self.vertices])

    def to_json(self) -> dict:
        def enc(v):
            return [v.numerator, v.denominator] if isinstance(v, Fraction) else repr(float(v))
        return {"vertices": [[enc(x), enc(y)] for x, y in self.vertices]}


# --------------------------------------------------------------------------
# fixtures


def square_norm() -> PolygonalNorm:
    """The sup norm: unit ball with vertices (+-1, +-1)."""
    return PolygonalNorm([(1, 1), (-1, 1), (-1, -1), (1, -1)])


def diamond_norm() -> PolygonalNorm:
    """The l1 norm: unit ball with vertices (+-1, 0), (0, +-1)."""
    return PolygonalNorm([(1, 0), (0, 1), (-1, 0), (0, -1)])


def hexagon_norm(exact: bool = True) -> PolygonalNorm:
    """
    The regular-hexagon norm.

    With ``exact=True`` the ball is the rational linear image with vertices
    (1,0), (1,1), (0,1) and their negatives; the norm is then
    ``max(|x|, |y|, |x - y|)``. Linear images give isometric normed planes,
    so every invariant computed here agrees with the regular hexagon.
    """
    if exact:
        return PolygonalNorm([(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)])
    return regular_polygon_norm(6)


def regular_polygon_norm(n_vertices: int, phase: float = 0.0) -> PolygonalNorm:
    """Regular polygon inscribed in the unit circle (float coordinates)."""
    if n_vertices < 4 or n_vertices % 2:
        raise InvalidPolygon("regular norm needs an even vertex count >= 4")
    t = phase + 2 * np.pi * np.arange(n_vertices) / n_vertices
    pts = np.column_stack([np.cos(t), np.sin(t)])
    half = n_vertices // 2
    # enforce exact float symmetry
    pts[half:] = -pts[:half]
    return PolygonalNorm([tuple(map(float, p)) for p in pts])


def random_symmetric_polygon(half_vertex_count: int, seed: int) -> PolygonalNorm:
    """
    Seeded random centrally symmetric polygon with ``2 * half_vertex_count``
    rational vertices.

    The ball is assembled from ``half_vertex_count`` edge vectors with
    strictly increasing directions in [0, pi); those edges followed by their
    negatives close up into a symmetric convex polygon. Edge coordinates are
    rounded to multiples of 1/1000 and the draw is repeated until the rounded
    polygon is still strictly convex.
    """
    k = int(half_vertex_count)
    if k < 2:
        raise ValueError("half_vertex_count must be >= 2")
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        angles = np.sort(rng.uniform(0.0, np.pi, size=k))
        lengths = rng.uniform(0.2, 1.0, size=k)
        edges = [(Fraction(round(1000 * l * math.cos(a)), 1000),
                  Fraction(round(1000 * l * math.sin(a)), 1000))
                 for l, a in zip(lengths, angles)]
        sx = sum(e[0] for e in edges)
        sy = sum(e[1] for e in edges)
        v = (-sx / 2, -sy / 2)
        pts = [v]
        for e in edges[:-1]:
            v = (v[0] + e[0], v[1] + e[1])
            pts.append(v)
        pts += [(-x, -y) for x, y in pts]
        try:
            norm = PolygonalNorm(pts)
        except InvalidPolygon:
            continue
        # bring the ball to unit scale: the largest vertex has max-coordinate 1
        m = max(max(abs(x), abs(y)) for x, y in norm.vertices)
        return norm.scaled(1 / m)
    raise RuntimeError("could not draw a valid polygon")  # pragma: no cover


# --------------------------------------------------------------------------
# basic invariants


def gauge(norm: PolygonalNorm, v) -> Number:
    """Minkowski functional: the smallest t >= 0 with v in t * B."""
    x, y = as_number(v[0]), as_number(v[1])
    return max(a * x + b * y for a, b in norm.dual_vertices)


def self_perimeter(norm: PolygonalNorm) -> Number:
    """Length of the unit circle measured in its own norm."""
    return polygon_perimeter(norm, norm.vertices)


def polygon_perimeter(norm: PolygonalNorm, points: Sequence) -> Number:
    """Norm length of the closed polygon through ``points``."""
    n = len(points)
    return sum((gauge(norm, (points[(i + 1) % n][0] - points[i][0],
                             points[(i + 1) % n][1] - points[i][1]))
                for i in range(n)), Fraction(0))


def polar_dual(norm: PolygonalNorm) -> PolygonalNorm:
    """The polar body {y : <x, y> <= 1 for all x in B} as a norm."""
    return PolygonalNorm(norm.dual_vertices)


def jacobian2(unit_set_area: Optional[Number], unbounded: bool = False) -> PiScalar:
    """
    Two-dimensional Jacobian ``pi / |{s <= 1}|`` of a seminorm.

    Returns 0 for a degenerate seminorm whose unit set is unbounded.
    """
    if unbounded or unit_set_area is None:
        return PiScalar(Fraction(0), 0)
    a = as_number(unit_set_area)
    if a < 0:
        raise ValueError("unit set area must be nonnegative")
    if a == 0:
        raise ValueError("unit set area is zero; pass unbounded=True for degenerate seminorms")
    return PiScalar(1 / a, 1)


def min_enclosing_parallelogram_area(norm: PolygonalNorm) -> Number:
    """
    Area of the smallest parallelogram containing the unit ball.

    For a symmetric body the optimum can be taken centred, i.e. of the form
    ``{|<a, x>| <= 1, |<b, x>| <= 1}`` with ``a, b`` in the polar body, and
    then each pair of sides is flush with an edge of the ball. Its area is
    ``4 / |det(a, b)|``, maximized over pairs of polar vertices.
    """
    d = norm.dual_vertices
    best = max(abs(_cross(d[i], d[j])) for i, j in itertools.combinations(range(len(d)), 2))
    return 4 / best


def area_density(norm: PolygonalNorm, mu: str) -> PiScalar:
    """
    Density of the area definition ``mu`` with respect to Lebesgue measure.

    ``hausdorff``: pi / |B|; ``holmes_thompson``: |B polar| / pi;
    ``mass_star``: 4 / (area of the smallest enclosing parallelogram).
    Each equals 1 for the Euclidean disk.
    """
    mu = area_definition(mu)
    if mu == "hausdorff":
        return jacobian2(norm.area)
    if mu == "holmes_thompson":
        return PiScalar(shoelace_area(norm.dual_vertices), -1)
    return PiScalar(4 / min_enclosing_parallelogram_area(norm), 0)


def isoperimetrix(norm: PolygonalNorm) -> PolygonalNorm:
    """
    Polar body rotated by +90 degrees.

    Its norm perimeter equals ``2 |B polar|`` automatically (mixed-area
    identity), so no rescaling is applied.
    """
    return PolygonalNorm([(-y, x) for x, y in norm.dual_vertices])


def isoperimetric_ratio(norm: PolygonalNorm, mu: str) -> PiScalar:
    """mu-area of the isoperimetrix divided by its squared norm perimeter."""
    iso = isoperimetrix(norm)
    length = polygon_perimeter(norm, iso.vertices)
    return area_density(norm, mu) * iso.area / (length * length)


# --------------------------------------------------------------------------
# Jung constant


@dataclass
class JungResult:
    """Jung constant with a two-sided enclosure and the extremal triangle."""

    lo: float
    hi: float
    exact: Optional[Fraction] = None
    witness: tuple = ()
    triples_solved: int = 0

    @property
    def value(self) -> Number:
        return self.exact if self.exact is not None else 0.5 * (self.lo + self.hi)


def chebyshev_radius(norm: PolygonalNorm, points: Sequence, exact: bool = False):
    """
    Smallest radius of a norm ball containing ``points``, and its centre.

    Solved as the linear program ``min t`` subject to
    ``<a_i, p_k - c> <= t`` for every polar vertex ``a_i`` and point ``p_k``.
    """
    dual = norm.dual_vertices if exact else [tuple(map(float, a)) for a in norm.dual_vertices]
    # variables: cx+, cx-, cy+, cy-, t ; t >= 0 holds automatically
    rows, rhs = [], []
    for p in points:
        px, py = as_number(p[0]), as_number(p[1])
        if not exact:
            px, py = float(px), float(py)
        for a, b in dual:
            rows.append([-a, a, -b, b, -1])
            rhs.append(-(a * px + b * py))
    c = [0, 0, 0, 0, 1]
    sol = solve_lp(c, A_ub=np.array(rows, dtype=object if exact else float), b_ub=rhs,
                   exact=exact)
    if exact and sol.exact:
        x = sol.x_exact
        return sol.value_exact, (x[0] - x[1], x[2] - x[3])
    x = sol.x
    return sol.value, (x[0] - x[1], x[2] - x[3])


def _interior_triples(dual, tol):
    """Triples of polar vertices with the origin strictly inside, with weights."""
    n = len(dual)
    out = []
    for i, j, k in itertools.combinations(range(n), 3):
        a, b, c = dual[i], dual[j], dual[k]
        # barycentric coordinates of the origin
        d = _cross((b[0] - a[0], b[1] - a[1]), (c[0] - a[0], c[1] - a[1]))
        if abs(d) <= tol:
            continue
        la = _cross(b, c) / d
        lb = _cross(c, a) / d
        lc = _cross(a, b) / d
        if la > tol and lb > tol and lc > tol:
            out.append(((i, j, k), (la, lb, lc)))
    return out


def _triple_lp_blocks(dual_f: np.ndarray, triples, lams):
    """
    Solve the per-triple programs in one block-diagonal LP.

    For a triple with weights (l0, l1, l2) and the first point at the origin,
    maximize ``l1 <a_j, p2> + l2 <a_k, p3>`` over ``p2, p3`` with all three
    pairwise norm distances at most 2.
    """
    n = dual_f.shape[0]
    z = np.zeros_like(dual_f)
    block = np.vstack([np.hstack([dual_f, z]), np.hstack([z, dual_f]), np.hstack([dual_f, -dual_f])])
    B = len(triples)
    A = sparse.kron(sparse.identity(B, format="csr"), sparse.csr_matrix(block), format="csr")
    b = np.full(3 * n * B, 2.0)
    c = np.empty(4 * B)
    for t, ((i, j, k), (l0, l1, l2)) in enumerate(zip(triples, lams)):
        c[4 * t:4 * t + 2] = -l1 * dual_f[j]
        c[4 * t + 2:4 * t + 4] = -l2 * dual_f[k]
    sol = solve_lp(c, A_ub=A, b_ub=b, bounds=(None, None))
    x = sol.x.reshape(B, 4)
    vals = -(c.reshape(B, 4) * x).sum(axis=1)
    return vals, x


def _triple_lp_exact(dual, triple, lam):
    i, j, k = triple
    _, l1, l2 = lam
    # variables p2x+, p2x-, p2y+, p2y-, p3x+, p3x-, p3y+, p3y-
    rows, rhs = [], []
    for a, b in dual:
        rows.append([a, -a, b, -b, 0, 0, 0, 0])
        rows.append([0, 0, 0, 0, a, -a, b, -b])
        rows.append([a, -a, b, -b, -a, a, -b, b])
        rhs += [2, 2, 2]
    aj, ak = dual[j], dual[k]
    c = [-l1 * aj[0], l1 * aj[0], -l1 * aj[1], l1 * aj[1],
         -l2 * ak[0], l2 * ak[0], -l2 * ak[1], l2 * ak[1]]
    sol = solve_lp(c, A_ub=np.array(rows, dtype=object), b_ub=rhs, exact=True)
    if not sol.exact:
        return None
    x = sol.x_exact
    return -sol.value_exact, ((Fraction(0), Fraction(0)), (x[0] - x[1], x[2] - x[3]),
                              (x[4] - x[5], x[6] - x[7]))


def jung_constant(norm: PolygonalNorm, resolution: float = 1e-6,
                  batch: int = 256) -> JungResult:
    """
    Jung constant of the normed plane.

    By Helly's theorem it suffices to maximize the Chebyshev radius over
    triangles of diameter at most 2. Writing that radius through its dual
    program, the maximum is attained at a vertex of the dual feasible set:
    either an antipodal pair (value 1) or three polar vertices with the
    origin strictly inside their hull, attached to the three triangle
    corners. Each such triple gives a small LP in the corners. Triples are
    processed in decreasing order of the a-priori bound ``2 (1 - max weight)``
    and the scan stops once the bound cannot beat the incumbent.

    Returns
    -------
    JungResult
        ``lo`` is the certified Chebyshev radius of the extremal triangle
        rescaled to diameter 2, ``hi`` the best LP value. For rational norms
        the extremal triple is re-solved exactly and ``exact`` is set.

    Raises
    ------
    JungClampError
        When the enclosure leaves [1, 4/3].
    EnclosureError
        When ``hi - lo`` exceeds ``resolution``.
    """
    exact = norm.exact
    dual = norm.dual_vertices
    dual_f = norm.dual_array
    n = len(dual)
    tol = 0 if exact else 1e-12
    cands = _interior_triples(dual, tol)
    half = n // 2
    # triples and their negatives (index shift by n/2) give the same value
    seen, uniq = set(), []
    for tri, lam in cands:
        neg = tuple(sorted((t + half) % n for t in tri))
        if neg in seen:
            continue
        seen.add(tri)
        uniq.append((tri, tuple(float(v) for v in lam), lam))
    uniq.sort(key=lambda item: (max(item[1]), item[0]))

    best, best_item, best_x = 1.0, None, None
    solved = 0
    pos = 0
    while pos < len(uniq):
        if 2 * (1 - max(uniq[pos][1])) <= best + 1e-12:
            break
        chunk = []
        while pos < len(uniq) and len(chunk) < batch:
            tri, lam_f, lam = uniq[pos]
            if 2 * (1 - max(lam_f)) <= best + 1e-12:
                break
            # put the heaviest weight at the origin corner
            order = np.argsort([-v for v in lam_f], kind="stable")
            chunk.append((tuple(tri[o] for o in order), tuple(lam_f[o] for o in order),
                          tuple(lam[o] for o in order)))
            pos += 1
        if not chunk:
            break
        vals, xs = _triple_lp_blocks(dual_f, [c[0] for c in chunk], [c[1] for c in chunk])
        solved += len(chunk)
        t = int(np.argmax(vals))
        if vals[t] > best:
            best, best_item, best_x = float(vals[t]), chunk[t], xs[t]

    if best_item is None:
        # only antipodal pairs: every set of diameter 2 fits in a unit ball
        seg = ((Fraction(0), Fraction(0)), tuple(2 * v for v in norm.vertices[0]))
        res = JungResult(lo=1.0, hi=1.0, exact=Fraction(1) if exact else None,
                         witness=seg, triples_solved=solved)
        return res

    pts = ((0.0, 0.0), (best_x[0], best_x[1]), (best_x[2], best_x[3]))
    diam = max(float(gauge(norm, (p[0] - q[0], p[1] - q[1])))
               for p, q in itertools.combinations(pts, 2))
    radius, _ = chebyshev_radius(norm.to_float() if exact else norm, pts)
    lo, hi = radius * 2 / diam, best
    exact_value = None
    witness = pts
    if exact:
        ex = _triple_lp_exact(dual, best_item[0], best_item[2])
        if ex is not None:
            exact_value, witness = ex
            lo = hi = float(exact_value)
    if hi > 4 / 3 + 1e-9 or lo < 1 - 1e-9:
        raise JungClampError(f"Jung enclosure [{lo}, {hi}] leaves [1, 4/3]")
    lo, hi = max(lo, 1.0), min(hi, 4 / 3)
    if hi - lo > resolution:
        raise EnclosureError(f"Jung enclosure width {hi - lo} exceeds {resolution}", witness)
    return JungResult(lo=lo, hi=hi, exact=exact_value, witness=witness, triples_solved=solved)


# --------------------------------------------------------------------------
# alpha_V and the invariant report


@dataclass
class Enclosure:
    lo: float
    hi: float
    exact: Optional[Fraction] = None

    @property
    def value(self) -> Number:
        return self.exact if self.exact is not None else 0.5 * (self.lo + self.hi)

    def __contains__(self, x) -> bool:
        return self.lo - 1e-15 <= float(x) <= self.hi + 1e-15


def alpha_v(norm: PolygonalNorm, resolution: float = 1e-6,
            jung: Optional[JungResult] = None) -> Enclosure:
    """``1 / (J(V) * perimeter)``, carrying the Jung enclosure through."""
    j = jung if jung is not None else jung_constant(norm, resolution)
    per = self_perimeter(norm)
    if j.exact is not None and is_exact(per):
        a = 1 / (j.exact * per)
        return Enclosure(float(a), float(a), a)
    per = float(per)
    return Enclosure(1 / (j.hi * per), 1 / (j.lo * per))


@dataclass
class NormInvariantReport:
    self_perimeter: Number
    jung: JungResult
    alpha_v: Enclosure
    densities: dict
    isoperimetrix_vertices: tuple
    isoperimetric_ratio: dict = field(default_factory=dict)


def norm_invariants(norm: PolygonalNorm, resolution: float = 1e-6) -> NormInvariantReport:
    """Every invariant of ``norm`` in one record."""
    j = jung_constant(norm, resolution)
    return NormInvariantReport(
        self_perimeter=self_perimeter(norm),
        jung=j,
        alpha_v=alpha_v(norm, jung=j),
        densities={mu: area_density(norm, mu) for mu in AREA_DEFINITIONS},
        isoperimetrix_vertices=isoperimetrix(norm).vertices,
        isoperimetric_ratio={mu: isoperimetric_ratio(norm, mu) for mu in AREA_DEFINITIONS},
    )
