"""Integral flows on signed graphs: double covers, resolution and circuit decompositions."""

from .graph import (
    BlockDecomposition,
    DirectedWalk,
    Edge,
    GraphError,
    Orientation,
    SignedGraph,
    Walk,
    WalkError,
    WalkStep,
    blocks,
    check_walk_sign_lemma,
    components,
    coupling,
    is_balanced,
    is_coherent,
    reorient,
    walk_sign,
)
from .cover import CoverGraph, build_cover, lift_orientation, lift_walk, project_function, project_walk
from .flow import (
    FlowError,
    boundary,
    flow_from_walk,
    is_flow,
    lift_flow,
    orientation_of_flow,
    total_weight,
    walk_from_flow,
)
from .structure import (
    Circuit,
    CircleTree,
    circuit_flow,
    classify_circuit,
    direction_of,
    enumerate_circuits,
    indicator,
    minimal_tour,
    recognize_circle_tree,
    tour_count,
)
from .decompose import (
    conformal_decompose,
    double_circuit_decompose,
    half_integer_decompose,
    is_indecomposable,
    oracle_minimal_flows,
    resolve,
)

__version__ = "0.1.0"
