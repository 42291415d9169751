"""Integer realizations of graph-associahedra and their exact certification."""

from .graph import Graph, GraphError, components, generate_family, is_connected_subset, parse_graph
from .realization import (
    HRep,
    HalfSpace,
    RealizedVertex,
    SolverError,
    WeightScheme,
    build_hrep,
    check_weight_condition,
    compute_coordinates,
    realize,
    scheme_loday,
    scheme_power3,
)
from .tubings import (
    PairClass,
    classify_pair,
    enumerate_maximal_tubings,
    enumerate_tubes,
    enumerate_tubings,
    f_vector,
    flip_neighbors,
    is_tube,
    is_valid_tubing,
)
from .verify import VerificationReport, full_report

__version__ = "0.1.0"
