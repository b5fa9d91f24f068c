"""Filling radius of a sampled unit circle in l-infinity, by two routes."""

import math
import time

from mfill.cli.verify import circle_metric
from mfill.filling import Loop, kuratowski_filling_radius, rips_filling_radius

print(f"target sqrt(3)/2 = {math.sqrt(3) / 2:.5f}")
print(f"{'n':>4} {'rips':>9} {'direct':>9} {'seconds':>8}")
for n in (12, 24, 36, 48):
    m = circle_metric(n)
    z = Loop(list(range(n)))
    t0 = time.perf_counter()
    rips = rips_filling_radius(m, z)
    direct = kuratowski_filling_radius(m, z)
    print(f"{n:4d} {rips:9.5f} {direct:9.5f} {time.perf_counter() - t0:8.2f}")
