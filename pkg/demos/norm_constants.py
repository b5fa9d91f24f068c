"""Self-perimeter, Jung constant, alpha and area densities for a few normed planes."""

import math

from mfill.cli.verify import sweep_norms
from mfill.normed_plane import (
    alpha_v,
    area_density,
    diamond_norm,
    hexagon_norm,
    jung_constant,
    regular_polygon_norm,
    self_perimeter,
    square_norm,
)

norms = {
    "square": square_norm(),
    "diamond": diamond_norm(),
    "hexagon": hexagon_norm(),
    "16-gon": regular_polygon_norm(16),
    "64-gon": regular_polygon_norm(64),
}

print(f"{'norm':>8} {'perimeter':>10} {'J':>8} {'alpha':>8} {'b':>7} {'ht':>7} {'m*':>7}")
for name, n in norms.items():
    j = jung_constant(n)
    a = alpha_v(n, jung=j)
    dens = [float(area_density(n, mu)) for mu in ("b", "ht", "m*")]
    print(f"{name:>8} {float(self_perimeter(n)):10.5f} {float(j.value):8.5f} {float(a.value):8.5f} "
          + " ".join(f"{d:7.4f}" for d in dens))

print(f"\n2/sqrt(3) = {2 / math.sqrt(3):.5f}, 3/32 = {3 / 32:.5f}, 1/8 = {1 / 8:.5f}")

sweep = sweep_norms(100, seed=1)
alphas = [alpha_v(n).lo for n in sweep]
print(f"100 random norms: alpha in [{min(alphas):.5f}, {max(alphas):.5f}]")
