"""Geodesic separators, weak r-divisions and approximation schemes for planar hyperbolic graphs."""

__version__ = "0.1.0"

from .approx import mis_approx, split_tour, t_join_on_tree, tsp_approx
from .division import pump_separator, weak_r_division
from .graph_core import Graph, GraphError
from .hyperbolic_metric import hyperbolicity_exact, slimness_estimate, slimness_upper_bound
from .plane_embedding import PlaneGraph
from .separator import SeparatorConfig, SeparatorResult, separator

__all__ = [
    "Graph",
    "GraphError",
    "PlaneGraph",
    "SeparatorConfig",
    "SeparatorResult",
    "hyperbolicity_exact",
    "mis_approx",
    "pump_separator",
    "separator",
    "slimness_estimate",
    "slimness_upper_bound",
    "split_tour",
    "t_join_on_tree",
    "tsp_approx",
    "weak_r_division",
]
