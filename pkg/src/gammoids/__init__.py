"""Combinatorial orientations of gammoids.

A gammoid is represented by a digraph, a target set, and a ground set; a
subset of the ground set is independent when it routes into the targets along
vertex-disjoint paths.  Given arc signs and a total arc order, this package
computes a realizable orientation of the gammoid purely combinatorially
(lifting cycles first when the digraph has any) and can cross-check every
sign against an exact integer realization.
"""

from .digraph import (
    Digraph,
    LiftingStep,
    LiftingTrace,
    Path,
    Routing,
    complete_lifting,
    enumerate_cycles,
    enumerate_paths,
    enumerate_routings,
    find_cycle,
    has_routing,
    is_acyclic,
    lift_cycle,
    max_disjoint_paths,
    pivot,
    topological_order,
)
from .errors import (
    CyclicDigraphError,
    DependentSetError,
    GammoidError,
    GroundMismatchError,
    InputError,
    OracleLimitError,
    ParseError,
    SingularMinorError,
)
from .gammoid import (
    CircuitFamily,
    RepresentedGammoid,
    circuits,
    contract_circuits,
    is_circuit,
    is_independent,
    matroids_equal,
    rank,
)
from .heavy_arc import (
    HeavyArcSignature,
    circuit_signature,
    compare_routings,
    extend_signature,
    max_routing,
    orient,
    orient_acyclic,
    routing_sign,
)
from .oracle import (
    MAX_ORACLE_ARCS,
    HeavyWeighting,
    PathMatrix,
    compare_orientations,
    cramer_circuit_orientation,
    det_sign,
    heavy_weighting,
    oracle_orientation,
    path_matrix,
    verify_heavy_weighting,
)
from .oriented import (
    AxiomReport,
    Orientation,
    SignedSubset,
    Violation,
    check_circuit_axioms,
    contract_orientation,
    negate,
    underlying_matroid,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "CircuitFamily",
    "CyclicDigraphError",
    "DependentSetError",
    "Digraph",
    "GammoidError",
    "GroundMismatchError",
    "HeavyArcSignature",
    "HeavyWeighting",
    "InputError",
    "LiftingStep",
    "LiftingTrace",
    "MAX_ORACLE_ARCS",
    "OracleLimitError",
    "Orientation",
    "ParseError",
    "Path",
    "PathMatrix",
    "RepresentedGammoid",
    "Routing",
    "SignedSubset",
    "SingularMinorError",
    "Violation",
    "check_circuit_axioms",
    "circuit_signature",
    "circuits",
    "compare_orientations",
    "compare_routings",
    "complete_lifting",
    "contract_circuits",
    "contract_orientation",
    "cramer_circuit_orientation",
    "det_sign",
    "enumerate_cycles",
    "enumerate_paths",
    "enumerate_routings",
    "extend_signature",
    "find_cycle",
    "has_routing",
    "heavy_weighting",
    "is_acyclic",
    "is_circuit",
    "is_independent",
    "lift_cycle",
    "matroids_equal",
    "max_disjoint_paths",
    "max_routing",
    "negate",
    "oracle_orientation",
    "orient",
    "orient_acyclic",
    "path_matrix",
    "pivot",
    "rank",
    "routing_sign",
    "topological_order",
    "underlying_matroid",
    "verify_heavy_weighting",
]
