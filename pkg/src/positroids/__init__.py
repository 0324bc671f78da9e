"""Ordered matroids and positroids: decorated permutations, Grassmann
necklaces, positroid envelopes and envelope classes, 2-sum decompositions and
binary/ternary classification."""

from .classify import (
    Classification,
    classify,
    envelope_count,
    is_binary,
    is_ternary,
    is_ternary_positroid,
    ternary_by_structure,
    ternary_structure,
)
from .connectivity import (
    TreeDecomposition,
    canonical_tree_decomposition,
    connected_components,
    connectivity_lambda,
    direct_sum,
    envelope_tree,
    find_k_separation,
    is_n_connected,
    positroid_tree_check,
    two_sum,
)
from .constructions import (
    Graph,
    circuit_matroid,
    cocircuit_matroid,
    graphic_matroid,
    n_graph,
    n_relaxed,
    uniform,
    wheel,
    whirl,
)
from .cyclic import CyclicShiftedOrder, are_crossing, gale_leq, is_noncrossing_partition, shifted_compare
from .errors import *  # noqa: F401,F403
from .kernels import BACKEND
from .maps import (
    DecoratedPermutation,
    EnvelopeClass,
    GrassmannNecklace,
    decorated_permutation_of,
    disjoint_union_perm,
    envelope_class_of,
    envelope_membership_check,
    envelope_positroid,
    grassmann_necklace_of,
    inverse_of,
    is_positroid,
    necklace_to_permutation,
    parse_permutation,
    permutation_to_necklace,
    two_sum_perm,
    weak_map_leq,
)
from .matroid import (
    Matroid,
    SubsetFamily,
    circuit_hyperplanes_of,
    circuits_of,
    closure_of,
    cocircuits_of,
    coloops_of,
    contract,
    delete,
    dual_of,
    dumps,
    has_minor_isomorphic,
    is_flat,
    is_isomorphic,
    loads,
    loops_of,
    matroid_from_bases,
    minor,
    rank_of,
    relax_circuit_hyperplane,
)
from .realize import f2_realizable, f3_realizable

__version__ = "0.1.0"
