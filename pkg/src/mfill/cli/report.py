"""
Reports: machine-readable records of one command, with input digests,
configuration echo, results and verdicts.

Scalars are rendered as ``{"decimal": ..., "exact": ...}`` (``exact`` only
when a rational or rational multiple of a power of pi is available).
Reports contain no timestamps or timings, so identical inputs give
byte-identical output; wall time is written to stderr instead.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .. import __version__
from ..normed_plane import Enclosure, PiScalar

PASS, FAIL = "PASS", "FAIL"


def scalar(v) -> dict:
    if isinstance(v, PiScalar):
        return v.render()
    if isinstance(v, bool):
        return {"decimal": str(v).lower()}
    if isinstance(v, (int, np.integer)):
        return {"decimal": repr(float(v)), "exact": str(int(v))}
    if isinstance(v, Fraction):
        return {"decimal": repr(float(v)), "exact": str(v)}
    f = float(v)
    if math.isnan(f) or math.isinf(f):
        return {"decimal": str(f)}
    return {"decimal": repr(f)}


def encode(obj):
    """Recursively convert results into JSON-ready values."""
    if isinstance(obj, (Fraction, PiScalar)):
        return scalar(obj)
    if isinstance(obj, Enclosure):
        out = {"lo": scalar(obj.lo), "hi": scalar(obj.hi)}
        if obj.exact is not None:
            out["exact"] = scalar(obj.exact)
        return out
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else str(f)
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [encode(v) for v in obj]
    return str(obj)


@dataclass
class Verdict:
    name: str
    invariant: str
    status: str
    value: object = None
    target: object = None
    tolerance: Optional[float] = None
    detail: str = ""
    scalable: bool = False

    def to_json(self) -> dict:
        out = {"name": self.name, "invariant": self.invariant, "status": self.status}
        if self.value is not None:
            out["value"] = encode(self.value)
        if self.target is not None:
            out["target"] = encode(self.target)
        if self.tolerance is not None:
            out["tolerance"] = self.tolerance
        if self.detail:
            out["detail"] = self.detail
        if self.scalable:
            out["discretization_limited"] = True
        return out


def check(name: str, invariant: str, ok: bool, **kw) -> Verdict:
    return Verdict(name, invariant, PASS if ok else FAIL, **kw)


def check_close(name: str, invariant: str, value, target, tol: float, scalable: bool = False) -> Verdict:
    ok = abs(float(value) - float(target)) <= tol
    return Verdict(name, invariant, PASS if ok else FAIL, value, target, tol, scalable=scalable)


@dataclass
class Report:
    command: str
    config: dict = field(default_factory=dict)
    inputs: list = field(default_factory=list)
    results: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    artifacts: list = field(default_factory=list)

    @property
    def failed(self) -> int:
        return sum(v.status == FAIL for v in self.verdicts)

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_json(self) -> dict:
        return {
            "tool": "mfill",
            "version": __version__,
            "command": self.command,
            "config": encode(self.config),
            "inputs": self.inputs,
            "results": encode(self.results),
            "verdicts": [v.to_json() for v in self.verdicts],
            "artifacts": self.artifacts,
            "summary": {"pass": len(self.verdicts) - self.failed, "fail": self.failed},
        }

    def dumps(self, fmt: str = "json") -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2) + "\n"
        return render_text(self.to_json())


def _flat(prefix: str, obj, out: list):
    if isinstance(obj, dict) and "decimal" in obj and set(obj) <= {"decimal", "exact"}:
        txt = obj["decimal"]
        if "exact" in obj and obj["exact"] != txt:
            txt += f" ({obj['exact']})"
        out.append(f"  {prefix}: {txt}")
    elif isinstance(obj, dict):
        for k, v in obj.items():
            _flat(f"{prefix}.{k}" if prefix else k, v, out)
    elif isinstance(obj, list) and len(obj) > 12:
        out.append(f"  {prefix}: [{len(obj)} items]")
    elif isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            _flat(f"{prefix}[{i}]", v, out)
    else:
        out.append(f"  {prefix}: {obj}")


def render_text(rep: dict) -> str:
    lines = [f"mfill {rep['version']}  {rep['command']}"]
    for inp in rep["inputs"]:
        lines.append(f"input {inp['name']}  {inp['digest']}")
    if rep["config"]:
        lines.append("config " + ", ".join(f"{k}={v}" for k, v in rep["config"].items()))
    lines.append("results")
    _flat("", rep["results"], lines)
    for v in rep["verdicts"]:
        line = f"{v['status']} {v['name']} [{v['invariant']}]"
        if "value" in v:
            val = v["value"]["decimal"] if isinstance(v["value"], dict) else v["value"]
            line += f" value={val}"
        if "target" in v:
            tgt = v["target"]["decimal"] if isinstance(v["target"], dict) else v["target"]
            line += f" target={tgt}"
        if "tolerance" in v:
            line += f" tol={v['tolerance']:g}"
        if v.get("detail"):
            line += f" {v['detail']}"
        lines.append(line)
    for a in rep["artifacts"]:
        lines.append(f"wrote {a}")
    s = rep["summary"]
    lines.append(f"{s['pass']} passed, {s['fail']} failed")
    return "\n".join(lines) + "\n"


def plot_series(path: str, x, ys: dict, xlabel: str, ylabel: str, title: str,
                hline: Optional[float] = None, hlabel: str = ""):
    """Write a standalone SVG line plot; output is byte-stable for equal input."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    with matplotlib.rc_context({"svg.hashsalt": "mfill", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6, 4))
        for label, y in ys.items():
            ax.plot(x, y, marker="o", label=label)
        if hline is not None:
            ax.axhline(hline, color="gray", linestyle="--", label=hlabel)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.set_title(title)
        ax.legend()
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
        plt.close(fig)
