"""Lower bounds for H_lambda on grid squares and on binary-tree contour walks."""

from mfill.cli.verify import tree_contour
from mfill.filling import h_lambda_estimate, square_loop
from mfill.finite_metric import grid_graph

lam = 8
print(f"lambda = {lam}")
print(f"{'r':>4} {'grid':>10} {'tree':>10} {'tree loop':>10}")
for r in (4, 8, 16, 32):
    g = grid_graph(r + 1)
    grid = h_lambda_estimate(g, square_loop(g, r), lam, r)
    tg, tz = tree_contour(r, lam)
    tree = h_lambda_estimate(tg, tz, lam, r)
    print(f"{r:4d} {grid.value:10.4f} {tree.value:10.4f} {len(tz.vertices):10d}")
