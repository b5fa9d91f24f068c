"""
Input parsing and file formats.

Numbers are ints, floats, decimal or ``p/q`` strings, or ``[p, q]`` pairs.
An input argument is a file path or the name of a packaged fixture
(``square``, ``hexagon.json``, ...).
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np

from ..filling import Chain, Loop, SimplicialComplex2, plane_patch
from ..finite_metric import (
    FiniteMetricSpace,
    Graph,
    GroupPresentation,
    binary_tree,
    cycle_graph,
    graph_metric,
    grid_graph,
    path_graph,
)
from ..normed_plane import PolygonalNorm, as_number, regular_polygon_norm


class InputError(ValueError):
    """Unreadable or malformed input file."""


def fixture_names() -> list:
    root = resources.files("mfill") / "fixtures"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def read_bytes(ref: str) -> tuple:
    """Contents and display name of a path or packaged fixture."""
    p = Path(ref)
    if p.is_file():
        return p.read_bytes(), str(ref)
    name = ref if ref.endswith((".json", ".csv")) else ref + ".json"
    res = resources.files("mfill") / "fixtures" / name
    if res.is_file():
        return res.read_bytes(), f"fixture:{name}"
    raise InputError(f"no such file or fixture: {ref}")


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


class Source:
    """A loaded input: parsed object, raw digest and display name."""

    def __init__(self, ref: str):
        self.raw, self.name = read_bytes(ref)
        self.digest = digest(self.raw)
        self.is_csv = self.name.endswith(".csv")
        if self.is_csv:
            self.obj = None
        else:
            try:
                self.obj = json.loads(self.raw)
            except json.JSONDecodeError as exc:
                raise InputError(f"{self.name}: invalid JSON ({exc})") from None

    def record(self) -> dict:
        return {"name": self.name, "digest": self.digest}


def number(v):
    try:
        return as_number(v)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad number {v!r}: {exc}") from None


# --------------------------------------------------------------------------
# norms and polygons


def parse_points(items) -> list:
    out = []
    for p in items:
        if not isinstance(p, (list, tuple)) or len(p) != 2:
            raise InputError(f"bad point {p!r}")
        out.append((number(p[0]), number(p[1])))
    return out


def load_norm(src: Source) -> PolygonalNorm:
    """``{"vertices": [...]}`` or ``{"regular": n, "phase": t}``."""
    obj = src.obj
    if not isinstance(obj, dict):
        raise InputError(f"{src.name}: expected a JSON object")
    if "regular" in obj:
        return regular_polygon_norm(int(obj["regular"]), float(obj.get("phase", 0.0)))
    if "vertices" not in obj:
        raise InputError(f"{src.name}: missing 'vertices'")
    return PolygonalNorm(parse_points(obj["vertices"]))


def load_region(src: Source) -> list:
    obj = src.obj
    pts = obj.get("vertices") if isinstance(obj, dict) else obj
    if pts is None:
        raise InputError(f"{src.name}: missing 'vertices'")
    return parse_points(pts)


# --------------------------------------------------------------------------
# metrics and graphs


def _matrix(rows) -> np.ndarray:
    vals = [[number(v) for v in row] for row in rows]
    if any(isinstance(v, float) for row in vals for v in row):
        return np.array([[float(v) for v in row] for row in vals], dtype=float)
    return np.array(vals, dtype=object)


def parse_csv_metric(text: str) -> FiniteMetricSpace:
    """Distance matrix with a header row of labels."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if not rows:
        raise InputError("empty CSV")
    labels, body = rows[0], rows[1:]
    if body and len(body[0]) == len(labels) + 1:
        body = [r[1:] for r in body]
    if len(body) != len(labels) or any(len(r) != len(labels) for r in body):
        raise InputError("CSV distance matrix must be square with one header row")
    return FiniteMetricSpace(_matrix([[c.strip() for c in r] for r in body]), labels=labels)


def load_graph(src: Source) -> Graph:
    """
    Edge-list JSON ``{"vertices": [...], "edges": [[u, v, w], ...]}`` (labels
    or indices; weight optional, default 1), or a generator:
    ``{"grid": [n, m]}``, ``{"tree": depth}``, ``{"cycle": n}``, ``{"path": n}``.
    """
    obj = src.obj
    if not isinstance(obj, dict):
        raise InputError(f"{src.name}: expected a JSON object")
    if "grid" in obj:
        g = obj["grid"]
        return grid_graph(*(g if isinstance(g, list) else [g]))
    if "tree" in obj:
        return binary_tree(int(obj["tree"]))
    if "cycle" in obj:
        return cycle_graph(int(obj["cycle"]))
    if "path" in obj:
        return path_graph(int(obj["path"]))
    if "edges" not in obj:
        raise InputError(f"{src.name}: not a graph")
    edges = []
    for e in obj["edges"]:
        if len(e) not in (2, 3):
            raise InputError(f"bad edge {e!r}")
        w = number(e[2]) if len(e) == 3 else 1
        edges.append((e[0], e[1], w))
    verts = obj.get("vertices")
    coords = np.array(obj["coords"], dtype=float) if "coords" in obj else None
    if all(isinstance(e[0], int) and isinstance(e[1], int) for e in edges):
        if verts is None:
            n = 1 + max((max(e[0], e[1]) for e in edges), default=-1)
            verts = [str(i) for i in range(n)]
        return Graph(list(verts), edges, coords)
    g = Graph.from_labelled_edges(edges, vertices=verts)
    g.coords = coords
    return g


def is_graph(obj) -> bool:
    return isinstance(obj, dict) and any(k in obj for k in ("edges", "grid", "tree", "cycle", "path"))


def load_metric(src: Source):
    """
    Returns ``(FiniteMetricSpace, Graph or None)``.

    Accepts a CSV matrix, ``{"labels": [...], "matrix": [[...]]}``,
    ``{"points": [[x, y], ...]}`` (Euclidean chord metric), ``{"circle": n}``
    (``n`` equally spaced unit-circle points) or any graph form.
    """
    if src.is_csv:
        return parse_csv_metric(src.raw.decode()), None
    obj = src.obj
    if is_graph(obj):
        g = load_graph(src)
        return graph_metric(g), g
    if not isinstance(obj, dict):
        raise InputError(f"{src.name}: expected a JSON object")
    if "matrix" in obj:
        return FiniteMetricSpace(_matrix(obj["matrix"]), labels=obj.get("labels")), None
    if "circle" in obj:
        n = int(obj["circle"])
        t = 2 * math.pi * np.arange(n) / n
        X = np.column_stack([np.cos(t), np.sin(t)])
        return _points_metric(X, [str(i) for i in range(n)]), None
    if "points" in obj:
        X = np.array([[float(number(c)) for c in p] for p in obj["points"]])
        return _points_metric(X, obj.get("labels")), None
    raise InputError(f"{src.name}: not a metric")


def _points_metric(X: np.ndarray, labels) -> FiniteMetricSpace:
    D = np.sqrt(((X[:, None, :] - X[None, :, :]) ** 2).sum(axis=-1))
    np.fill_diagonal(D, 0.0)
    return FiniteMetricSpace(D, labels=labels, validate=False)


def load_presentation(src: Source) -> GroupPresentation:
    if not isinstance(src.obj, dict) or "generators" not in src.obj:
        raise InputError(f"{src.name}: expected {{'generators': [...], 'relators': [...]}}")
    return GroupPresentation.from_json(src.obj)


# --------------------------------------------------------------------------
# complexes, chains and loops


def load_complex(src: Source) -> SimplicialComplex2:
    """
    OFF-like JSON ``{"vertices": [[x, y(, z)], ...], "triangles": [[i, j, k], ...],
    "weights": [...], "metric": [[...]], "ambient": "euclidean"}`` or a
    generated patch ``{"patch": {"model": "euclidean" | "hyperbolic7" | {norm},
    "extent": e, "mesh": h, "mu": "ht", "shape": "square" | "disk",
    "centered": false}}``.
    """
    obj = src.obj
    if not isinstance(obj, dict):
        raise InputError(f"{src.name}: expected a JSON object")
    if "patch" in obj:
        p = obj["patch"]
        model = p.get("model", "euclidean")
        if isinstance(model, dict):
            model = PolygonalNorm(parse_points(model["vertices"]))
        return plane_patch(model, number(p.get("extent", 1)), number(p.get("mesh", 1)),
                           mu=p.get("mu", "ht"), shape=p.get("shape", "square"),
                           centered=bool(p.get("centered", False)))
    if "triangles" not in obj:
        raise InputError(f"{src.name}: missing 'triangles'")
    verts = obj.get("vertices")
    n = obj.get("n_vertices", len(verts) if verts is not None else None)
    if n is None:
        raise InputError(f"{src.name}: give 'vertices' or 'n_vertices'")
    coords = None
    if verts is not None:
        coords = np.array([[float(number(c)) for c in v] for v in verts])
    weights = [number(w) for w in obj["weights"]] if "weights" in obj else None
    metric = None
    if "metric" in obj:
        metric = np.array([[float(number(v)) for v in row] for row in obj["metric"]])
    return SimplicialComplex2(n, obj["triangles"], obj.get("edges", ()), coords=coords,
                              weights=weights, metric=metric, ambient=obj.get("ambient", "euclidean"))


def _vertex(v, labels):
    if isinstance(v, int):
        return v
    if labels is not None:
        try:
            return labels.index(v)
        except ValueError:
            pass
    raise InputError(f"unknown vertex {v!r}")


def parse_loop(items, labels=None) -> Loop:
    return Loop([_vertex(v, labels) for v in items])


def load_loops(src: Source, k: Optional[SimplicialComplex2] = None, labels=None) -> list:
    """
    ``{"loop": [v, ...]}``, ``{"loops": [[...], ...]}``, ``{"rings": [i, ...]}``
    (ring loops of a disk or hyperbolic patch) or ``{"square": r, "origin": [x, y]}``
    (boundary of an ``r x r`` grid square, vertices labelled ``"x,y"``).
    """
    obj = src.obj
    if not isinstance(obj, dict):
        raise InputError(f"{src.name}: expected a JSON object")
    if "loop" in obj:
        return [parse_loop(obj["loop"], labels)]
    if "loops" in obj:
        return [parse_loop(L, labels) for L in obj["loops"]]
    if "rings" in obj:
        rings = (k.meta.get("rings") if k is not None else None)
        if rings is None:
            raise InputError("ring loops need a disk or hyperbolic patch")
        return [Loop(rings[i]) for i in obj["rings"]]
    if "square" in obj:
        r = int(obj["square"])
        x0, y0 = obj.get("origin", [0, 0])
        pts = ([(x0 + t, y0) for t in range(r)] + [(x0 + r, y0 + t) for t in range(r)]
               + [(x0 + r - t, y0 + r) for t in range(r)] + [(x0, y0 + r - t) for t in range(r)])
        return [parse_loop([f"{x},{y}" for x, y in pts], labels)]
    raise InputError(f"{src.name}: no loop found")


def load_cycle(src: Source, k: SimplicialComplex2) -> Chain:
    """A loop form (see :func:`load_loops`) or a sparse chain
    ``{"chain": [[u, v, c], ...]}``."""
    obj = src.obj
    if isinstance(obj, dict) and "chain" in obj:
        coeffs = {}
        for item in obj["chain"]:
            u, v, c = item
            key = (int(u), int(v))
            coeffs[key] = coeffs.get(key, 0) + number(c)
        return Chain(1, coeffs)
    loops = load_loops(src, k)
    z = loops[0].chain()
    for L in loops[1:]:
        z = z + L.chain()
    return z


# --------------------------------------------------------------------------
# CSV output


def matrix_csv(labels, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([str(x) for x in labels])
    for r in rows:
        w.writerow([_cell(v) for v in r])
    return buf.getvalue()


def table_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(v) for v in r])
    return buf.getvalue()


def _cell(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)
