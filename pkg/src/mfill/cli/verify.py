"""
The acceptance matrix behind ``mfill verify``.

Each criterion returns a list of verdicts. Tolerances marked
discretization-limited are multiplied by ``tolerance_scale``; exact checks
are never relaxed or tightened.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..filling import (
    Chain,
    Loop,
    SimplicialComplex2,
    boundary_matrices,
    boundary_of,
    contour_loop,
    h_lambda_estimate,
    isoperimetric_profile,
    kuratowski_filling_radius,
    kuratowski_neighborhood_complex,
    min_filling_area,
    plane_patch,
    ring_loops,
    rips_filling_radius,
    square_loop,
)
from ..finite_metric import (
    FiniteMetricSpace,
    GroupPresentation,
    binary_tree,
    cayley_ball,
    cycle_graph,
    four_point_delta,
    graph_metric,
    grid_graph,
    kuratowski_embed,
    random_metric,
    slim_triangle_delta,
    tight_span,
    tripod_legs,
)
from ..normed_plane import (
    alpha_v,
    area_density,
    hexagon_norm,
    isoperimetric_ratio,
    jung_constant,
    random_symmetric_polygon,
    regular_polygon_norm,
    self_perimeter,
    square_norm,
)
from .report import check, check_close

QUARTER_PI = 1 / (4 * math.pi)
SWEEP_COUNT = 200

CRITERIA = {
    1: "perimeter bounds",
    2: "Jung and alpha constants",
    3: "area-definition inequalities",
    4: "isoperimetrix ratios",
    5: "filling radius of the circle",
    6: "sharp isoperimetric constant",
    7: "H_lambda dichotomy",
    8: "hyperbolicity calculators",
    9: "structural suites",
}
SUITES = {"constants": [1, 2, 3, 4, 5, 6], "all": [1, 2, 3, 4, 5, 6, 7, 8, 9]}


def sweep_norms(count: int, seed: int) -> list:
    """Seeded random norms: half vertex counts in 2..8 and per-norm seeds."""
    rng = np.random.default_rng(seed)
    ks = rng.integers(2, 9, size=count)
    seeds = rng.integers(0, 2 ** 31, size=count)
    return [random_symmetric_polygon(int(k), int(s)) for k, s in zip(ks, seeds)]


def fixtures() -> dict:
    return {"square": square_norm(), "hexagon": hexagon_norm(), "euclid64": regular_polygon_norm(64)}


class Context:
    def __init__(self, seed: int, tolerance_scale: float):
        self.seed = seed
        self.scale = tolerance_scale
        self._norms = None
        self._jung = {}
        self.results = {}

    @property
    def norms(self) -> list:
        if self._norms is None:
            self._norms = sweep_norms(SWEEP_COUNT, self.seed)
        return self._norms

    def jung(self, key, norm):
        if key not in self._jung:
            self._jung[key] = jung_constant(norm)
        return self._jung[key]


def c1(ctx: Context) -> list:
    per = [self_perimeter(n) for n in ctx.norms] + [self_perimeter(n) for n in fixtures().values()]
    bad = sum(not (6 <= p <= 8) for p in per)
    sq, hx = self_perimeter(square_norm()), self_perimeter(hexagon_norm())
    ctx.results[1] = {"norms": len(per), "min": min(map(float, per)), "max": max(map(float, per)),
                      "violations": bad, "square": sq, "hexagon": hx}
    return [
        check("C1 perimeter in [6, 8]", "perimeter bounds", bad == 0, value=bad, target=0),
        check("C1 square perimeter", "exact value", sq == 8 and isinstance(sq, Fraction), value=sq, target=8),
        check("C1 hexagon perimeter", "exact value", hx == 6 and isinstance(hx, Fraction), value=hx, target=6),
    ]


def c2(ctx: Context) -> list:
    s = ctx.scale
    fx = fixtures()
    js = ctx.jung("square", fx["square"])
    jh = ctx.jung("hexagon", fx["hexagon"])
    je = ctx.jung("euclid64", fx["euclid64"])
    a_sq = alpha_v(fx["square"], jung=js)
    a_hx = alpha_v(fx["hexagon"], jung=jh)
    alphas = [alpha_v(n, jung=ctx.jung(i, n)) for i, n in enumerate(ctx.norms)]
    amin = min(a.lo for a in alphas)
    ctx.results[2] = {"J_square": js.value, "J_hexagon": jh.value, "J_euclid64": [je.lo, je.hi],
                      "alpha_square": a_sq.value, "alpha_hexagon": a_hx.value, "sweep_alpha_min": amin}
    return [
        check("C2 J(square) = 1", "exact value", js.exact == 1, value=js.value, target=1),
        check_close("C2 J(euclid64)", "Jung constant of the disk", je.value, 2 / math.sqrt(3), 1e-2 * s, True),
        check_close("C2 J(hexagon)", "Jung constant", jh.value, Fraction(4, 3), 1e-2 * s, True),
        check("C2 alpha(square) = 1/8", "alpha enclosure", Fraction(1, 8) in a_sq, value=a_sq.value,
              target=Fraction(1, 8)),
        check("C2 alpha(hexagon) = 1/8", "alpha enclosure", Fraction(1, 8) in a_hx, value=a_hx.value,
              target=Fraction(1, 8)),
        check("C2 sweep min alpha >= 3/32", "alpha lower bound", amin >= 3 / 32 - 1e-3 * s, value=amin,
              target=Fraction(3, 32), tolerance=1e-3 * s, scalable=True),
    ]


def c3(ctx: Context) -> list:
    b_bad = m_bad = 0
    for n in ctx.norms:
        ht = float(area_density(n, "ht"))
        b_bad += ht > float(area_density(n, "b")) + 1e-12
        m_bad += ht > float(area_density(n, "m*")) + 1e-12
    ctx.results[3] = {"norms": len(ctx.norms), "ht_gt_b": b_bad, "ht_gt_mstar": m_bad}
    return [
        check("C3 ht <= b", "area-definition inequality", b_bad == 0, value=b_bad, target=0),
        check("C3 ht <= m*", "area-definition inequality", m_bad == 0, value=m_bad, target=0),
    ]


def c4(ctx: Context) -> list:
    out = []
    fx = fixtures()
    worst = 0.0
    for name, n in list(fx.items()) + [(f"sweep{i}", n) for i, n in enumerate(ctx.norms)]:
        worst = max(worst, abs(float(isoperimetric_ratio(n, "ht")) - QUARTER_PI))
    out.append(check("C4 ht ratio = 1/(4 pi)", "Holmes-Thompson equality", worst <= 1e-12,
                     value=worst, target=0, tolerance=1e-12))
    sq = float(isoperimetric_ratio(fx["square"], "m*"))
    eu = float(isoperimetric_ratio(fx["euclid64"], "m*"))
    ctx.results[4] = {"ht_max_deviation": worst, "mstar_square": sq, "mstar_euclid64": eu}
    out.append(check("C4 m* ratio excess (square)", "strict isoperimetric excess", sq - QUARTER_PI > 1e-3,
                     value=sq, target=QUARTER_PI))
    out.append(check_close("C4 m* ratio (euclid64)", "equality for the Euclidean plane", eu, QUARTER_PI,
                           1e-3 * ctx.scale, True))
    return out


def circle_metric(n: int) -> FiniteMetricSpace:
    t = 2 * math.pi * np.arange(n) / n
    X = np.column_stack([np.cos(t), np.sin(t)])
    D = np.sqrt(((X[:, None] - X[None]) ** 2).sum(-1))
    np.fill_diagonal(D, 0.0)
    return FiniteMetricSpace(D, validate=False)


def c5(ctx: Context) -> list:
    m = circle_metric(60)
    z = Loop(list(range(60)))
    rips = rips_filling_radius(m, z)
    direct = kuratowski_filling_radius(m, z)
    tol = 0.05 * ctx.scale
    ctx.results[5] = {"rips": rips, "direct": direct, "target": math.sqrt(3) / 2}
    return [
        check_close("C5 Rips filling radius", "filling radius of the circle", rips, math.sqrt(3) / 2, tol, True),
        check_close("C5 direct route agreement", "two-route cross-oracle", direct, rips, tol, True),
    ]


def euclidean_profile():
    k = plane_patch(None, 12, Fraction(1, 2), shape="disk")
    return isoperimetric_profile(k, ring_loops(k, range(8, 25, 2)))


def hyperbolic_profile(radius: int = 5):
    k = plane_patch("hyperbolic7", radius)
    return isoperimetric_profile(k, ring_loops(k))


def c6(ctx: Context) -> list:
    e = euclidean_profile()
    h = hyperbolic_profile()
    rel = abs(e.coefficient - QUARTER_PI) / QUARTER_PI
    ctx.results[6] = {"euclidean_fit": e.coefficient, "euclidean_relative_error": rel,
                      "euclidean_verdict": e.verdict, "hyperbolic_ratios": h.ratios,
                      "hyperbolic_verdict": h.verdict}
    return [
        check("C6 Euclidean fit ~ 1/(4 pi)", "sharp isoperimetric constant", rel <= 0.15 * ctx.scale,
              value=e.coefficient, target=QUARTER_PI, tolerance=0.15 * ctx.scale, scalable=True),
        check("C6 hyperbolic ratios decrease", "linear isoperimetry", h.strictly_decreasing,
              value=h.ratios[-1]),
        check("C6 hyperbolic final ratio < fit/2", "linear isoperimetry", h.ratios[-1] < e.coefficient / 2,
              value=h.ratios[-1], target=e.coefficient / 2),
    ]


def tree_contour(r: int, lam: float):
    """Contour walk of the deepest complete binary subtree whose length fits ``lam * r``."""
    k = 1
    while 4 * (2 ** (k + 1) - 1) <= lam * r:
        k += 1
    g = binary_tree(k)
    return g, contour_loop(g)


def c7(ctx: Context) -> list:
    lam = 8
    out, grid_vals, tree_vals = [], {}, {}
    cap_ok = True
    for r in (8, 16, 32):
        g = grid_graph(r + 1)
        res = h_lambda_estimate(g, square_loop(g, r), lam, r)
        grid_vals[r] = res.value
        cap_ok &= res.within_cap
        tg, tz = tree_contour(r, lam)
        tres = h_lambda_estimate(tg, tz, lam, r)
        tree_vals[r] = tres.value
        cap_ok &= tres.within_cap
    ctx.results[7] = {"lambda": lam, "grid": grid_vals, "tree": tree_vals}
    tv = [tree_vals[r] for r in (8, 16, 32)]
    out.append(check("C7 grid lower bounds >= 0.4", "non-hyperbolic signature",
                     min(grid_vals.values()) >= 0.4, value=min(grid_vals.values()), target=0.4))
    out.append(check("C7 tree bounds <= 0.05", "hyperbolic signature", max(tv) <= 0.05, value=max(tv),
                     target=0.05))
    out.append(check("C7 tree bounds non-increasing", "vanishing in r", all(b <= a for a, b in zip(tv, tv[1:]))))
    out.append(check("C7 a-priori cap lambda^4", "upper bound", cap_ok))
    return out


def c8(ctx: Context) -> list:
    t = four_point_delta(graph_metric(binary_tree(4)))
    slim = slim_triangle_delta(cycle_graph(6))
    grid = [four_point_delta(graph_metric(grid_graph(n))) for n in range(3, 9)]
    ctx.results[8] = {"tree": t, "cycle6_slim": slim, "grids": grid}
    return [
        check("C8 tree delta = 0", "exact value", t == 0, value=t, target=0),
        check("C8 6-cycle slim constant = 1", "exact value", slim == 1, value=slim, target=1),
        check("C8 grid deltas increase", "strict monotonicity", all(b > a for a, b in zip(grid, grid[1:]))),
    ]


def _random_cycles(k: SimplicialComplex2, count: int, seed: int) -> list:
    rng = np.random.default_rng(seed)
    nt = len(k.triangles)
    out = []
    while len(out) < count:
        picks = rng.choice(nt, size=int(rng.integers(1, 6)), replace=False)
        c = Chain(2, {int(t): int(rng.choice([-2, -1, 1, 2])) for t in picks})
        z = boundary_of(k, c)
        if z.coeffs:
            out.append(z)
    return out


def generated_complexes() -> dict:
    oct_tris = [(0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4), (1, 0, 5), (2, 1, 5), (3, 2, 5), (0, 3, 5)]
    return {
        "square_patch": plane_patch(None, 4, 1),
        "disk_patch": plane_patch(None, 3, Fraction(1, 2), shape="disk"),
        "hyperbolic_patch": plane_patch("hyperbolic7", 3),
        "octahedron": SimplicialComplex2(6, oct_tris),
        "kuratowski_circle": kuratowski_neighborhood_complex(circle_metric(12), 1.8)[0],
    }


def c9(ctx: Context) -> list:
    out = []
    iso_bad = 0
    for s in range(20):
        m = random_metric(8, ctx.seed * 1000 + s)
        e = kuratowski_embed(m, m.labels[0])
        iso_bad += not np.array_equal(e.distance_matrix(), m.d)
    out.append(check("C9 Kuratowski isometry", "exact isometry", iso_bad == 0, value=iso_bad, target=0))

    m3 = FiniteMetricSpace([[0, 3, 4], [3, 0, 5], [4, 5, 0]])
    ts = tight_span(m3)
    legs = sorted(tripod_legs(m3))
    lengths = sorted(ts.edge_lengths())
    out.append(check("C9 tripod legs", "tight span of three points", lengths == legs, value=lengths,
                     target=legs))

    k = plane_patch(None, 4, 1)
    gap = 0.0
    homog_bad = 0
    rng = np.random.default_rng(ctx.seed)
    for z in _random_cycles(k, 50, ctx.seed):
        r = min_filling_area(k, z)
        gap = max(gap, r.certificate_gap)
        c = int(rng.choice([-3, -2, 2, 3]))
        r2 = min_filling_area(k, z * c)
        homog_bad += r2.area != abs(c) * r.area
    out.append(check("C9 LP duality certificate", "primal-dual match", gap <= 1e-9, value=gap, tolerance=1e-9))
    out.append(check("C9 homogeneity", "exact homogeneity", homog_bad == 0, value=homog_bad, target=0))

    dd_bad = []
    for name, kk in generated_complexes().items():
        d1, d2 = boundary_matrices(kk)
        if (d1 @ d2).count_nonzero():
            dd_bad.append(name)
    out.append(check("C9 boundary of boundary", "d1 d2 = 0", not dd_bad, detail=",".join(dd_bad)))

    z2 = len(cayley_ball(GroupPresentation(("a", "b"), ("abAB",)), 3).vertices)
    f2 = len(cayley_ball(GroupPresentation(("a", "b")), 2).vertices)
    out.append(check("C9 Cayley ball Z^2 r=3", "exact count", z2 == 25, value=z2, target=25))
    out.append(check("C9 Cayley ball F2 r=2", "exact count", f2 == 17, value=f2, target=17))
    ctx.results[9] = {"kuratowski_failures": iso_bad, "tripod": lengths, "duality_gap": gap,
                      "homogeneity_failures": homog_bad, "cayley_z2": z2, "cayley_f2": f2}
    return out


RUNNERS = {1: c1, 2: c2, 3: c3, 4: c4, 5: c5, 6: c6, 7: c7, 8: c8, 9: c9}


def run(suite: str, seed: int = 7, tolerance_scale: float = 1.0, progress=None):
    """Run a suite; returns ``(verdicts, results)``."""
    ctx = Context(seed, tolerance_scale)
    verdicts = []
    for cid in SUITES[suite]:
        vs = RUNNERS[cid](ctx)
        verdicts += vs
        if progress is not None:
            progress(cid, vs)
    results = {f"criterion_{cid}": {"title": CRITERIA[cid], **ctx.results.get(cid, {})}
               for cid in SUITES[suite]}
    return verdicts, results
