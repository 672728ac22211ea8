"""Signed perfect matchings, Euler complexes, and oriented complementary pivoting.

The package is organised around a few small immutable value types
(:class:`~oikpivot.graph.Digraph`, :class:`~oikpivot.oik.Oik`,
:class:`~oikpivot.polytope.LabeledPolytope`, Gale labelings) plus pure
operations on them.  Everything combinatorial is cross-checkable against
the brute-force oracles in :mod:`oikpivot.oracle`.
"""

from .graph import (
    Digraph,
    Edge,
    Pairing,
    euler_pairing,
    matching_sign,
    permutation_parity,
    symmetric_difference,
    validate_instance,
)
from .oracle import (
    SkewMatrix,
    determinant_exact,
    enumerate_matchings,
    signed_matching_sum,
    skew_adjacency,
)
from .dsu import UnionFind
from .switchcycle import (
    bipartite_opposite_matching,
    find_opposite_matching,
)
from .pivot import PivotingSystem, classify, follow_path, pair_all_cl_states, state_sign
from .oik import (
    Oik,
    OrientedOik,
    enumerate_partitions,
    exchange_path,
    oik_sum,
    orient_and_pair,
    partition_sign,
    sperner_oik,
    validate_oik,
)
from .polytope import (
    LabeledPolytope,
    build_unit_vector_polytope,
    extract_equilibrium,
    lemke_path,
    pivot_edge,
    sperner_polytope,
    vertex_solve,
)
from .gale import (
    GaleLabeling,
    derived_graph,
    enumerate_gale,
    gale_pivot_path,
    gale_to_matching,
)

__all__ = [
    "Digraph",
    "Edge",
    "GaleLabeling",
    "LabeledPolytope",
    "Oik",
    "OrientedOik",
    "Pairing",
    "PivotingSystem",
    "SkewMatrix",
    "UnionFind",
    "bipartite_opposite_matching",
    "build_unit_vector_polytope",
    "classify",
    "derived_graph",
    "determinant_exact",
    "enumerate_gale",
    "enumerate_matchings",
    "enumerate_partitions",
    "euler_pairing",
    "exchange_path",
    "extract_equilibrium",
    "find_opposite_matching",
    "follow_path",
    "gale_pivot_path",
    "gale_to_matching",
    "lemke_path",
    "matching_sign",
    "oik_sum",
    "orient_and_pair",
    "pair_all_cl_states",
    "partition_sign",
    "permutation_parity",
    "pivot_edge",
    "signed_matching_sum",
    "skew_adjacency",
    "sperner_oik",
    "sperner_polytope",
    "state_sign",
    "symmetric_difference",
    "validate_instance",
    "validate_oik",
    "vertex_solve",
]
