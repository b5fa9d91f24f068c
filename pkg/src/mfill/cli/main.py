"""
Command line: ``mfill <norm|metric|fill|verify> <subcommand> [inputs] [--flags]``.

Every command emits a Report (JSON or text). The exit code is 0 iff no
verdict failed; malformed input exits with status 2.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from ..config import DEFAULT_CAPS, CapConfigError, caps
from ..filling import (
    InvalidChain,
    LoopLipschitzError,
    MeshTooCoarse,
    NotFillable,
    boundary_of,
    filling_radius,
    h_lambda_estimate,
    isoperimetric_profile,
    kuratowski_filling_radius,
    min_filling_area,
    rips_filling_radius,
    semi_ellipticity_check,
    stokes_sum,
)
from ..filling.complex import InvalidComplex, Loop
from ..finite_metric import (
    CapExceeded,
    DisconnectedGraph,
    InvalidMetric,
    InvalidPresentation,
    cayley_ball,
    delta_thickening,
    four_point_delta,
    kuratowski_embed,
    slim_triangle_delta,
    tight_span,
    tripod_legs,
)
from ..normed_plane import (
    AREA_DEFINITIONS,
    EnclosureError,
    InvalidPolygon,
    JungClampError,
    alpha_v,
    area_definition,
    area_density,
    isoperimetric_ratio,
    isoperimetrix,
    jung_constant,
    polar_dual,
    self_perimeter,
)
from . import io as mio
from . import verify as mverify
from .report import Report, check, check_close, plot_series

QUARTER_PI = 1 / (4 * math.pi)
MU_CHOICES = ["b", "ht", "m*"]


class UsageError(ValueError):
    pass


def _mus(args) -> list:
    return [area_definition(args.mu)] if args.mu else list(AREA_DEFINITIONS)


def _config(args, **extra) -> dict:
    out = {"seed": args.seed, "tolerance_scale": args.tolerance_scale}
    if args.mu:
        out["mu"] = area_definition(args.mu)
    if args.mesh is not None:
        out["mesh"] = args.mesh
    out.update(extra)
    overrides = {k: v for k, v in caps().items() if v != DEFAULT_CAPS[k]}
    if overrides:
        out["cap_overrides"] = overrides
    return out


def _need(args, n: int):
    if len(args.inputs) < n:
        raise UsageError(f"'{args.family} {args.sub}' needs {n} input(s)")
    return [mio.Source(x) for x in args.inputs[:n]]


def _polygon(p) -> list:
    return p.to_json()["vertices"]


# --------------------------------------------------------------------------
# norm


def cmd_norm(args) -> Report:
    sub = args.sub
    if sub == "sweep":
        return _norm_sweep(args)
    (src,) = _need(args, 1)
    norm = mio.load_norm(src)
    rep = Report(f"norm {sub}", _config(args), [src.record()])
    res = rep.results
    res["norm"] = {"vertices": _polygon(norm)}
    if sub == "perimeter":
        p = self_perimeter(norm)
        res["self_perimeter"] = p
        rep.verdicts.append(check("perimeter in [6, 8]", "perimeter bounds", 6 <= p <= 8, value=p))
    elif sub == "dual":
        d = polar_dual(norm)
        res["dual"] = {"vertices": _polygon(d), "area": d.area}
        back = polar_dual(d)
        same = back == norm if norm.exact else np.allclose(
            np.array(back.vertices, float), np.array(norm.vertices, float), atol=1e-9)
        rep.verdicts.append(check("dual of dual", "polarity involution", bool(same)))
    elif sub == "density":
        dens = {mu: area_density(norm, mu) for mu in AREA_DEFINITIONS}
        res["densities"] = {mu: dens[mu] for mu in _mus(args)}
        ht = float(dens["holmes_thompson"])
        rep.verdicts.append(check("ht <= b", "area-definition inequality", ht <= float(dens["hausdorff"]) + 1e-12))
        rep.verdicts.append(check("ht <= m*", "area-definition inequality", ht <= float(dens["mass_star"]) + 1e-12))
        hb = float(dens["hausdorff"]) * float(norm.area)
        rep.verdicts.append(check_close("hausdorff density x area = pi", "Hausdorff normalization", hb,
                                        math.pi, 1e-12))
    elif sub == "isoperimetrix":
        iso = isoperimetrix(norm)
        res["isoperimetrix"] = {"vertices": _polygon(iso)}
        ratios = {mu: isoperimetric_ratio(norm, mu) for mu in _mus(args)}
        res["isoperimetric_ratio"] = ratios
        res["reference"] = QUARTER_PI
        for mu, r in ratios.items():
            if mu == "holmes_thompson":
                rep.verdicts.append(check_close("ht ratio = 1/(4 pi)", "Holmes-Thompson equality", r,
                                                QUARTER_PI, 1e-12))
            else:
                rep.verdicts.append(check(f"{mu} ratio >= 1/(4 pi)", "isoperimetric inequality",
                                          float(r) >= QUARTER_PI - 1e-12, value=r, target=QUARTER_PI))
    elif sub == "jung":
        j = jung_constant(norm)
        res["jung"] = {"lo": j.lo, "hi": j.hi, "value": j.value, "exact": j.exact,
                       "witness": [[float(c) for c in p] for p in j.witness], "triples_solved": j.triples_solved}
        rep.verdicts.append(check("J in [1, 4/3]", "Jung bounds", 1 <= j.lo <= j.hi <= 4 / 3 + 1e-12,
                                  value=j.value))
    elif sub == "alpha":
        j = jung_constant(norm)
        a = alpha_v(norm, jung=j)
        res["alpha"] = a
        res["value"] = a.value
        res["jung"] = j.value
        res["self_perimeter"] = self_perimeter(norm)
        rep.verdicts.append(check("alpha >= 3/32", "alpha lower bound", a.lo >= 3 / 32 - 1e-12, value=a.value,
                                  target=Fraction(3, 32)))
        rep.verdicts.append(check("alpha <= 1/8", "alpha upper bound", a.hi <= 1 / 8 + 1e-12, value=a.value,
                                  target=Fraction(1, 8)))
    else:
        raise UsageError(f"unknown norm subcommand {sub!r}")
    return rep


def _norm_sweep(args) -> Report:
    norms = mverify.sweep_norms(args.count, args.seed)
    stats = {"self_perimeter": [], "jung": [], "alpha": [], "ht_ratio": [], "mstar_ratio": [], "b_ratio": []}
    viol = {"perimeter": 0, "jung": 0, "alpha": 0, "density": 0}
    for n in norms:
        p = self_perimeter(n)
        j = jung_constant(n)
        a = alpha_v(n, jung=j)
        stats["self_perimeter"].append(float(p))
        stats["jung"].append(j.value)
        stats["alpha"].append(a.lo)
        for key, mu in (("ht_ratio", "ht"), ("mstar_ratio", "m*"), ("b_ratio", "b")):
            stats[key].append(float(isoperimetric_ratio(n, mu)))
        viol["perimeter"] += not (6 <= p <= 8)
        viol["jung"] += not (1 <= j.lo and j.hi <= 4 / 3 + 1e-12)
        viol["alpha"] += a.lo < 3 / 32 - 1e-12
        ht = float(area_density(n, "ht"))
        viol["density"] += ht > float(area_density(n, "b")) + 1e-12 or ht > float(area_density(n, "m*")) + 1e-12
    rep = Report("norm sweep", _config(args, count=args.count))
    rep.results = {"count": len(norms),
                   "min": {k: min(v) for k, v in stats.items()},
                   "max": {k: max(v) for k, v in stats.items()},
                   "violations": viol}
    for k, v in viol.items():
        rep.verdicts.append(check(f"{k} violations = 0", f"{k} bounds", v == 0, value=v, target=0))
    return rep


# --------------------------------------------------------------------------
# metric


def cmd_metric(args) -> Report:
    sub = args.sub
    (src,) = _need(args, 1)
    rep = Report(f"metric {sub}", _config(args), [src.record()])
    res = rep.results
    if sub == "cayley":
        p = mio.load_presentation(src)
        g = cayley_ball(p, args.radius)
        rep.config["radius"] = args.radius
        res.update({"vertices": len(g.vertices), "edges": len(g.edges), "labels": g.vertices})
        if args.out and args.out.endswith(".csv"):
            _write(args.out, mio.table_csv(["u", "v"], [(g.vertices[i], g.vertices[j]) for i, j, _ in g.edges]))
            rep.artifacts.append(Path(args.out).name)
        return rep
    m, g = mio.load_metric(src)
    res["points"] = len(m)
    if sub == "delta":
        res["four_point_delta"] = four_point_delta(m)
        if g is not None:
            res["slim_triangle_lower_bound"] = slim_triangle_delta(g, seed=args.seed)
        rep.verdicts.append(check("delta >= 0", "nonnegativity", res["four_point_delta"] >= 0))
    elif sub == "embed":
        base = args.basepoint if args.basepoint is not None else m.labels[0]
        if base not in m.labels:
            raise UsageError(f"unknown basepoint {base!r}")
        e = kuratowski_embed(m, base)
        rep.config["basepoint"] = base
        res["labels"] = e.labels
        res["coords"] = e.coords.tolist()
        D = e.distance_matrix()
        ok = np.array_equal(D, m.d) if m.exact else np.allclose(D, m.d, atol=1e-12)
        rep.verdicts.append(check("sup distances reproduce d", "isometry", bool(ok)))
        if args.out and args.out.endswith(".csv"):
            _write(args.out, mio.matrix_csv(e.labels, e.coords.tolist()))
            rep.artifacts.append(Path(args.out).name)
    elif sub == "tightspan":
        ts = tight_span(m, args.density)
        res.update({"dimension": ts.dimension, "sample_points": len(ts.space),
                    "vertices": len(ts.vertices), "edges": ts.edges, "edge_lengths": ts.edge_lengths(),
                    "cells": ts.cells, "notes": ts.notes})
        sub_d = ts.space.as_float()[np.ix_(ts.embedding, ts.embedding)]
        rep.verdicts.append(check("input points embed isometrically", "isometric copy",
                                  bool(np.allclose(sub_d, m.as_float(), atol=1e-9))))
        resid = float(ts.extremality_residual(m.as_float()))
        rep.verdicts.append(check("extremality identity", "extremal functions", resid <= 1e-9, value=resid,
                                  tolerance=1e-9))
        if len(m) == 3:
            legs = tripod_legs(m)
            res["tripod_legs"] = legs
            rep.verdicts.append(check("tripod legs", "tight span of three points",
                                      sorted(ts.edge_lengths()) == sorted(legs), value=sorted(ts.edge_lengths()),
                                      target=sorted(legs)))
        if args.out and args.out.endswith(".csv"):
            _write(args.out, mio.matrix_csv(ts.space.labels, ts.space.as_float().tolist()))
            rep.artifacts.append(Path(args.out).name)
    elif sub == "thicken":
        if g is None:
            raise UsageError("thicken needs a graph input")
        delta = mio.number(args.delta)
        th = delta_thickening(g, delta, args.density)
        rep.config["delta"] = delta
        n = len(g.vertices)
        D = th.space.as_float()
        G = m.as_float()
        iso = bool(np.allclose(D[:n, :n], G, atol=1e-9))
        res.update({"points": len(th.space), "net": th.net, "piece_sizes": th.piece_sizes,
                    "hausdorff": th.hausdorff, "observed_constant": th.observed_constant, "notes": th.notes})
        rep.verdicts.append(check("graph embeds isometrically", "isometric inclusion", iso))
        rep.verdicts.append(check("Hausdorff distance <= 64 delta", "thickening bound",
                                  th.hausdorff <= 64 * float(delta) + 1e-9, value=th.hausdorff,
                                  target=64 * float(delta)))
        if args.out and args.out.endswith(".csv"):
            _write(args.out, mio.matrix_csv(th.space.labels, D.tolist()))
            rep.artifacts.append(Path(args.out).name)
    else:
        raise UsageError(f"unknown metric subcommand {sub!r}")
    return rep


# --------------------------------------------------------------------------
# fill


def cmd_fill(args) -> Report:
    sub = args.sub
    s = args.tolerance_scale
    if sub == "rips":
        srcs = [mio.Source(x) for x in args.inputs[:2]]
        if not srcs:
            raise UsageError("'fill rips' needs a metric input")
        m, _ = mio.load_metric(srcs[0])
        z = mio.load_loops(srcs[1], labels=m.labels)[0] if len(srcs) > 1 else Loop(list(range(len(m))))
        rep = Report("fill rips", _config(args), [x.record() for x in srcs])
        rips = rips_filling_radius(m, z)
        direct = kuratowski_filling_radius(m, z, args.scale)
        rep.results.update({"rips_filling_radius": rips, "direct_filling_radius": direct,
                            "loop_points": len(z.vertices)})
        rep.verdicts.append(check_close("direct route agrees with Rips route", "two-route cross-oracle",
                                        direct, rips, 0.05 * s, True))
        return rep
    if sub == "semiell":
        srcs = _need(args, 2)
        model = srcs[0].obj
        norm = None if (isinstance(model, dict) and model.get("model") == "euclidean") else mio.load_norm(srcs[0])
        region = mio.load_region(srcs[1])
        mesh = mio.number(args.mesh) if args.mesh is not None else Fraction(1, 8)
        mu = args.mu or "m*"
        r = semi_ellipticity_check(norm, region, mesh, mu, 0.05 * s)
        rep = Report("fill semiell", _config(args, mesh=mesh, mu=area_definition(mu)), [x.record() for x in srcs])
        rep.results.update({"fill_area": r.fill_area, "region_area": r.region_area, "ratio": r.ratio,
                            "experimental": r.experimental, "notes": r.notes})
        rep.verdicts.append(check("fill >= mu(region) (1 - tol)", "semi-ellipticity", r.verdict == "PASS",
                                  value=r.ratio, target=1, tolerance=r.tolerance, scalable=True))
        return rep
    if sub == "hlambda":
        srcs = _need(args, 2)
        g = mio.load_graph(srcs[0])
        loop = mio.load_loops(srcs[1], labels=g.vertices)[0]
        r = h_lambda_estimate(g, loop, args.lam, args.r, args.rounds)
        rep = Report("fill hlambda", _config(args, **{"lambda": args.lam, "r": args.r, "rounds": args.rounds}),
                     [x.record() for x in srcs])
        w = r.witnesses
        rep.results.update({"value": r.value, "cap": r.cap, "loop_length": r.loop_length, "start": r.start,
                            "rounds_used": r.rounds, "history": r.history,
                            "witnesses": w.to_json(g.vertices)})
        rep.verdicts.append(check("0 <= value <= lambda^4", "a-priori bound",
                                  0 <= r.value and r.within_cap, value=r.value, target=r.cap))
        f = dict(zip(w.vertices, w.f + 1.5))
        pi = dict(zip(w.vertices, w.pi - 0.75))
        shifted = stokes_sum(loop, f, pi)
        rep.verdicts.append(check_close("value invariant under constant shifts", "shift invariance",
                                        shifted, r.value, 1e-9 * max(1.0, abs(r.value))))
        return rep

    srcs = _need(args, 2)
    k = mio.load_complex(srcs[0])
    rep = Report(f"fill {sub}", _config(args), [x.record() for x in srcs])
    rep.results["substrate"] = {"vertices": k.n_vertices, "edges": len(k.edges), "triangles": len(k.triangles),
                                "kind": k.meta.get("kind", "file")}
    if sub == "area":
        z = mio.load_cycle(srcs[1], k)
        r = min_filling_area(k, z, mode=args.mode)
        rep.config["mode"] = args.mode
        rep.results.update({"area": r.area, "exact": r.exact, "method": r.method,
                            "dual_value": r.dual_value, "chain": r.chain.to_json(),
                            "potential": r.potential, "integrality_gap": r.integrality_gap,
                            "label": "substrate-relative upper bound for the filling area"})
        rep.verdicts.append(check("boundary of filling = cycle", "feasibility",
                                  boundary_of(k, r.chain).coeffs == z.coeffs if r.exact else _close_chain(k, r.chain, z)))
        if args.mode == "relaxed":
            rep.verdicts.append(check("primal = dual", "LP duality certificate", r.certificate_gap <= 1e-9,
                                      value=r.certificate_gap, tolerance=1e-9))
    elif sub == "radius":
        z = mio.load_cycle(srcs[1], k)
        rep.results["filling_radius"] = filling_radius(k, z)
    elif sub == "profile":
        loops = mio.load_loops(srcs[1], k)
        p = isoperimetric_profile(k, loops)
        rep.results.update({"rows": [[r.length, r.fill_area, r.ratio] for r in p.rows],
                            "coefficient": p.coefficient, "exponent": p.exponent, "verdict": p.verdict,
                            "skipped": p.skipped, "reference": QUARTER_PI,
                            "label": "fill areas are substrate-relative upper bounds"})
        kind = k.meta.get("kind")
        if kind in ("disk", "square") and k.meta.get("norm") is None:
            rel = abs(p.coefficient - QUARTER_PI) / QUARTER_PI
            rep.verdicts.append(check("fit within 15% of 1/(4 pi)", "sharp isoperimetric constant",
                                      rel <= 0.15 * s, value=p.coefficient, target=QUARTER_PI,
                                      tolerance=0.15 * s, scalable=True))
        elif kind == "hyperbolic7":
            rep.verdicts.append(check("ratios strictly decreasing", "linear isoperimetry", p.strictly_decreasing))
        plot = args.plot or (str(Path(args.out).with_suffix(".svg")) if args.out else None)
        if plot and p.rows:
            plot_series(plot, [r.length for r in p.rows], {"fill area / length^2": p.ratios},
                        "loop length", "ratio", "isoperimetric profile", QUARTER_PI, "1/(4 pi)")
            rep.artifacts.append(Path(plot).name)
        if args.out and args.out.endswith(".csv"):
            _write(args.out, mio.table_csv(["length", "fill_area", "ratio"],
                                           [(r.length, r.fill_area, r.ratio) for r in p.rows]))
            rep.artifacts.append(Path(args.out).name)
    else:
        raise UsageError(f"unknown fill subcommand {sub!r}")
    return rep


def _close_chain(k, c, z) -> bool:
    b = boundary_of(k, c)
    keys = set(b.coeffs) | set(z.coeffs)
    return all(abs(float(b.coeffs.get(e, 0)) - float(z.coeffs.get(e, 0))) <= 1e-7 for e in keys)


# --------------------------------------------------------------------------
# verify


def cmd_verify(args) -> Report:
    if args.sub not in mverify.SUITES:
        raise UsageError(f"unknown suite {args.sub!r}; choose from {sorted(mverify.SUITES)}")

    def progress(cid, vs):
        status = "PASS" if all(v.status == "PASS" for v in vs) else "FAIL"
        print(f"criterion {cid} ({mverify.CRITERIA[cid]}): {status}", file=sys.stderr)

    verdicts, results = mverify.run(args.sub, args.seed, args.tolerance_scale, progress)
    rep = Report(f"verify {args.sub}", _config(args), results=results, verdicts=verdicts)
    return rep


# --------------------------------------------------------------------------


def _write(path: str, text: str):
    Path(path).write_text(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("inputs", nargs="*", help="input files or packaged fixture names")
    common.add_argument("--seed", type=int, default=7)
    common.add_argument("--mesh", default=None, help="mesh step, e.g. 1/8")
    common.add_argument("--mu", choices=MU_CHOICES, default=None, help="area definition")
    common.add_argument("--tolerance-scale", type=float, default=1.0,
                        help="multiplier for discretization-limited tolerances")
    common.add_argument("--out", default=None, help="write the report (or CSV data for .csv) here")
    common.add_argument("--format", choices=["json", "text"], default="json")

    p = argparse.ArgumentParser(prog="mfill", description="Metric geometry of fillings.")
    fam = p.add_subparsers(dest="family", required=True)

    norm = fam.add_parser("norm", help="polygonal norm invariants")
    ns = norm.add_subparsers(dest="sub", required=True)
    for name in ("perimeter", "dual", "density", "isoperimetrix", "jung", "alpha"):
        ns.add_parser(name, parents=[common])
    sw = ns.add_parser("sweep", parents=[common])
    sw.add_argument("--count", type=int, default=200)

    metric = fam.add_parser("metric", help="finite metric spaces")
    ms = metric.add_subparsers(dest="sub", required=True)
    ms.add_parser("delta", parents=[common])
    e = ms.add_parser("embed", parents=[common])
    e.add_argument("--basepoint", default=None)
    t = ms.add_parser("tightspan", parents=[common])
    t.add_argument("--density", type=float, default=None, help="sample spacing inside cells")
    th = ms.add_parser("thicken", parents=[common])
    th.add_argument("--delta", default="1")
    th.add_argument("--density", type=float, default=None)
    c = ms.add_parser("cayley", parents=[common])
    c.add_argument("--radius", type=int, default=2)

    fill = fam.add_parser("fill", help="filling problems")
    fs = fill.add_subparsers(dest="sub", required=True)
    a = fs.add_parser("area", parents=[common])
    a.add_argument("--mode", choices=["relaxed", "integral"], default="relaxed")
    fs.add_parser("radius", parents=[common])
    r = fs.add_parser("rips", parents=[common])
    r.add_argument("--scale", type=float, default=None, help="Rips scale of the direct-route complex")
    pr = fs.add_parser("profile", parents=[common])
    pr.add_argument("--plot", default=None, help="SVG path for the ratio plot")
    h = fs.add_parser("hlambda", parents=[common])
    h.add_argument("--lambda", dest="lam", type=float, default=8.0)
    h.add_argument("--r", type=float, default=8.0)
    h.add_argument("--rounds", type=int, default=8)
    fs.add_parser("semiell", parents=[common])

    v = fam.add_parser("verify", help="acceptance suite")
    vs = v.add_subparsers(dest="sub", required=True)
    for name in mverify.SUITES:
        vs.add_parser(name, parents=[common])
    return p


COMMANDS = {"norm": cmd_norm, "metric": cmd_metric, "fill": cmd_fill, "verify": cmd_verify}
INPUT_ERRORS = (mio.InputError, UsageError, InvalidPolygon, InvalidMetric, InvalidPresentation,
                InvalidChain, InvalidComplex, DisconnectedGraph, LoopLipschitzError, MeshTooCoarse,
                CapConfigError, KeyError)
RUN_ERRORS = (NotFillable, CapExceeded, EnclosureError, JungClampError)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        rep = COMMANDS[args.family](args)
    except INPUT_ERRORS as exc:
        print(f"mfill: error: {exc}", file=sys.stderr)
        return 2
    except RUN_ERRORS as exc:
        print(f"mfill: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    text = rep.dumps(args.format)
    if args.out and not args.out.endswith(".csv"):
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    print(f"mfill: {rep.command} finished in {time.perf_counter() - t0:.2f} s "
          f"({len(rep.verdicts) - rep.failed} pass, {rep.failed} fail)", file=sys.stderr)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
