"""Balanced labelings of multigraphs over finite Abelian groups.

H(E,A) is the group of edge labelings summing to zero along every closed
ttrail, W(V u E, A) the same for labelings of vertices and edges together,
and B(V,A) the group of vertex labelings that some edge labeling balances.
This package computes their structure, decides balance and balanceability,
constructs balancing edge labelings, realizes the three isomorphisms with
explicit coordinates, and validates everything against brute-force oracles.
"""

from ballab.abelian import (
    FiniteAbelianGroup,
    GroupElement,
    GroupStructure,
    element_at,
    element_index,
    element_order,
    enumerate_elements,
    half,
    in_double_image,
    in_two_torsion,
    parse_element,
    parse_group,
    structure_cardinality,
    two_torsion_count,
)
from ballab.connectivity import (
    Partition,
    connected_components,
    k_edge_classes,
    max_edge_disjoint_paths,
    quotient_graph,
)
from ballab.cyclespace import (
    BasisExtension,
    EdgeSet,
    ShortGenerator,
    basis_extension,
    boundary,
    cycle_space_basis,
    decompose_homological_cycle,
    decompose_into_short,
    select_short_generators,
    weak_cycle_space,
)
from ballab.errors import BoundExceededError, FormatError, InternalCheckError
from ballab.labelings import (
    EdgeLabeling,
    FullLabeling,
    PhiCoordinates,
    PsiCoordinates,
    VertexLabeling,
    XiCoordinates,
    balance,
    count_balanced,
    group_structure,
    is_balanced_edges,
    is_balanced_full,
    is_balanceable,
    parse_labeling,
    phi,
    phi_inv,
    psi,
    psi_inv,
    serialize_labeling,
    value_along,
    xi,
    xi_inv,
)
from ballab.linsolve import SmithSolver, smith_normal_form, solve_mod
from ballab.multigraph import (
    MultiGraph,
    SequenceKind,
    Ttrail,
    build_graph,
    classify_sequence,
    parse_graph,
    serialize_graph,
    ttrail_concat,
    ttrail_inverse,
)
from ballab.oracle import (
    enumerate_simple_cycles,
    oracle_count_balanced,
    oracle_is_balanced,
    oracle_k_classes,
)

__version__ = "0.1.0"
