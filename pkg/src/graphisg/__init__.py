"""Inverse semigroups of partial isomorphisms of finite multigraphs."""

from .errors import DomainError, ParseError, ResourceLimitError, StructureError
from .graphs import (
    Graph,
    GraphIso,
    SubgraphRef,
    canonical_form,
    canonical_form_rooted,
    complement,
    enumerate_induced_subgraphs,
    enumerate_rooted_connected_induced,
    enumerate_rooted_path_pairs,
    enumerate_subgraphs,
    find_isomorphism,
    induced_subgraph,
    parse_graph,
    path_pair_key,
    subgraph_intersection,
)
from .partial_iso import (
    PartialIso,
    compose_fisg,
    compose_pisg,
    compose_tisg,
    identity_on,
    invert,
    is_idempotent,
    natural_leq,
)
from .semigroup import (
    Caps,
    DEFAULT_CAPS,
    FISG,
    IISG,
    KINDS,
    PISG,
    TISG,
    InverseSemigroup,
    automorphism_subgroup,
    build,
    compose_for_kind,
    idempotents,
    semigroup_from_json,
    semigroup_to_json,
    verify_inverse_semigroup,
)
from .lattice import (
    FinitePoset,
    LatticeReport,
    analyze,
    hasse_dot,
    idempotent_poset,
    pisg_lattice_criterion,
    tisg_join,
    tisg_meet,
)
from .ideals import (
    Ideal,
    aut_complement_ideal,
    enumerate_ideals,
    extract_basis,
    greedy_basis,
    ideal_lattice_report,
    is_ideal,
    principal_ideal,
    rees_quotient,
    sandwich_ideal,
)
from .reconstruction import (
    AbstractSemigroup,
    SemigroupIsomorphism,
    find_table_isomorphism,
    forget,
    iisg_complement_functor,
    iisg_counterexample_check,
    recover_graph,
    transport_isomorphism,
    verify_characterization,
)

__version__ = "0.1.0"
