"""Finite metric spaces, hyperbolicity, injective envelopes and Cayley balls."""

from .cayley import GroupPresentation, InvalidPresentation, cayley_ball
from .embedding import EmbeddedPointSet, kuratowski_embed
from .hyperbolicity import four_point_delta, slim_triangle_delta
from .metric import (
    CapExceeded,
    DisconnectedGraph,
    FiniteMetricSpace,
    Graph,
    InvalidMetric,
    binary_tree,
    cycle_graph,
    graph_metric,
    grid_graph,
    path_graph,
    random_metric,
    shortest_paths,
)
from .thickening import Thickening, delta_thickening, separated_net
from .tight_span import TightSpan, tight_span, tripod_legs

__all__ = [
    "CapExceeded", "DisconnectedGraph", "EmbeddedPointSet", "FiniteMetricSpace", "Graph",
    "GroupPresentation", "InvalidMetric", "InvalidPresentation", "Thickening", "TightSpan",
    "binary_tree", "cayley_ball", "cycle_graph", "delta_thickening", "four_point_delta",
    "graph_metric", "grid_graph", "kuratowski_embed", "path_graph", "random_metric",
    "separated_net", "shortest_paths", "slim_triangle_delta", "tight_span", "tripod_legs",
]
