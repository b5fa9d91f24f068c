"""
Size caps shared by the library and the command line.

Caps can be overridden with the ``MFILL_CAP`` environment variable, a
comma-separated list of ``name=value`` pairs, e.g.
``MFILL_CAP="tight_span_points=14,cayley_nodes=500000"``.
"""

from __future__ import annotations

import os

class CapConfigError(ValueError):
    """Malformed ``MFILL_CAP`` value."""


DEFAULT_CAPS = {
    "tight_span_points": 12,
    "cayley_nodes": 200_000,
    "patch_triangles": 200_000,
    "exact_lp_triangles": 2_000,
    "integral_bb_nodes": 5_000,
    "thickening_points": 2_000,
}


def caps() -> dict:
    out = dict(DEFAULT_CAPS)
    raw = os.environ.get("MFILL_CAP", "").strip()
    if raw:
        for item in raw.split(","):
            name, _, value = item.partition("=")
            name = name.strip()
            if name not in out:
                raise CapConfigError(f"unknown cap {name!r} in MFILL_CAP")
            try:
                out[name] = int(value)
            except ValueError:
                raise CapConfigError(f"cap {name!r} needs an integer value, got {value!r}") from None
    return out


def cap(name: str) -> int:
    return caps()[name]
