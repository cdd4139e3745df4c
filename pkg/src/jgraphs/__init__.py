"""Johnson graphs, companion families, exact automorphism groups, and
mechanical verification of their structure."""

__version__ = "0.1.0"

from .subsets import (
    MAX_GROUND_SET,
    SubsetLabel,
    binomial,
    intersection_size,
    rank_subset,
    unrank_subset,
)
from .graphs import (
    DEFAULT_VERTEX_CAP,
    DistancePartition,
    Graph,
    VertexCapExceeded,
    bits,
    complement,
    complete_bipartite,
    complete_graph,
    distance_partition,
    induced_subgraph,
    johnson_graph,
    kneser_graph,
    line_graph,
    neighborhood,
)
from .perms import (
    Perm,
    PermGroup,
    brute_force_automorphisms,
    compose,
    group_from_generators,
    inverse,
)
from .search import (
    CanonicalForm,
    ColoredPartition,
    automorphism_group,
    canonical_form,
    check_automorphism,
    color_refinement,
    find_isomorphism,
    verify_isomorphism,
)
from .johnson import (
    IntersectionWitness,
    PartialVertexMap,
    ReconstructionError,
    TransitivityProfile,
    VerificationReport,
    bipartite_aut_order,
    complementation_map,
    distance_by_intersection,
    induced_action,
    local_reconstruction,
    neighborhood_iso,
    transitivity_profile,
    unique_intersection_witness,
    verify_johnson_aut,
    whitney_lift,
)
from .formats import (
    parse_graph6,
    write_dot,
    write_edgelist,
    write_graph6,
)

__all__ = [
    "MAX_GROUND_SET",
    "SubsetLabel",
    "binomial",
    "intersection_size",
    "rank_subset",
    "unrank_subset",
    "DEFAULT_VERTEX_CAP",
    "DistancePartition",
    "Graph",
    "VertexCapExceeded",
    "bits",
    "complement",
    "complete_bipartite",
    "complete_graph",
    "distance_partition",
    "induced_subgraph",
    "johnson_graph",
    "kneser_graph",
    "line_graph",
    "neighborhood",
    "Perm",
    "PermGroup",
    "brute_force_automorphisms",
    "compose",
    "group_from_generators",
    "inverse",
    "CanonicalForm",
    "ColoredPartition",
    "automorphism_group",
    "canonical_form",
    "check_automorphism",
    "color_refinement",
    "find_isomorphism",
    "verify_isomorphism",
    "IntersectionWitness",
    "PartialVertexMap",
    "ReconstructionError",
    "TransitivityProfile",
    "VerificationReport",
    "bipartite_aut_order",
    "complementation_map",
    "distance_by_intersection",
    "induced_action",
    "local_reconstruction",
    "neighborhood_iso",
    "transitivity_profile",
    "unique_intersection_witness",
    "verify_johnson_aut",
    "whitney_lift",
    "parse_graph6",
    "write_dot",
    "write_edgelist",
    "write_graph6",
    "__version__",
]
