"""Fill area against squared length on a Euclidean disk and an order-7 hyperbolic ball.

Writes ``profiles.svg`` next to this script.
"""

import math
from fractions import Fraction
from pathlib import Path

from mfill.cli.report import plot_series
from mfill.filling import isoperimetric_profile, plane_patch, ring_loops

euclid = plane_patch(None, 12, Fraction(1, 2), shape="disk")
e = isoperimetric_profile(euclid, ring_loops(euclid, range(4, 25, 2)))
hyper = plane_patch("hyperbolic7", 5)
h = isoperimetric_profile(hyper, ring_loops(hyper))

print(f"euclidean: c = {e.coefficient:.5f} (1/(4 pi) = {1 / (4 * math.pi):.5f}), "
      f"exponent {e.exponent:.3f}, {e.verdict}")
print(f"hyperbolic: exponent {h.exponent:.3f}, {h.verdict}")
for row in h.rows:
    print(f"  length {row.length:7.1f}  area {float(row.fill_area):8.1f}  ratio {row.ratio:.5f}")

out = Path(__file__).with_name("profiles.svg")
plot_series(str(out), list(range(len(e.rows))), {"euclidean disk": e.ratios},
            "ring", "fill area / length^2", "Euclidean ring loops", hline=1 / (4 * math.pi),
            hlabel="1/(4 pi)")
print(f"wrote {out.name}")
