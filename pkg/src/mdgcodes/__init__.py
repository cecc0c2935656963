"""Perfect binary one-error-correcting codes and their minimum distance graphs.

The package generates perfect and extended perfect codes, builds their
minimum distance graphs, recovers all pairwise distances from graph
structure alone, reconstructs codes from unlabeled graphs, decides code
equivalence, and transfers automorphisms between codes and graphs.
"""

from .automorphisms import (
    GraphAut,
    code_aut_to_graph_aut,
    extend_codemap,
    graph_aut_to_code_aut,
    hamming_automorphisms,
    identity_labeling,
    make_graph_aut,
    perfect_aut_transfer,
    sample_code_automorphisms,
    vasilev_automorphisms,
)
from .distances import (
    DistanceMatrix,
    extend_graph,
    recognize_distance4_pairs,
    recover_all_distances,
    recover_distances_from,
)
from .equivalence import EquivResult, find_equivalence, rank_invariant
from .errors import (
    FormatError,
    InvalidGraphError,
    MdgcodesError,
    UnsupportedParameterError,
)
from .generators import VasilevSpec, gen_extended, gen_family, gen_hamming, gen_vasilev
from .mdgraph import (
    MDGraph,
    build_mdg,
    format_dimacs,
    parse_dimacs,
    read_dimacs,
    shuffle_graph,
    write_dimacs,
)
from .reconstruction import (
    Labeling,
    detect_parity_coordinate,
    reconstruct_extended,
    reconstruct_perfect,
)
from .steiner import (
    SQS,
    BlockGraph,
    check_clique_bound,
    enumerate_point_cliques,
    neighborhood_block_graph,
    sqs_from_point_cliques,
    validate_sqs,
)
from .words import (
    Code,
    CodeMap,
    ValidationResult,
    Word,
    apply_codemap,
    extend_parity,
    format_code,
    hamming_distance,
    min_distance,
    pairwise_distances,
    parse_code,
    puncture,
    read_code,
    validate_extended_perfect,
    validate_perfect,
    write_code,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "MdgcodesError", "FormatError", "InvalidGraphError", "UnsupportedParameterError",
    # words & codes
    "Word", "Code", "CodeMap", "ValidationResult",
    "hamming_distance", "pairwise_distances", "min_distance",
    "extend_parity", "puncture", "apply_codemap",
    "validate_perfect", "validate_extended_perfect",
    "format_code", "parse_code", "read_code", "write_code",
    # generators
    "gen_hamming", "gen_vasilev", "gen_extended", "gen_family", "VasilevSpec",
    # graphs
    "MDGraph", "build_mdg", "shuffle_graph",
    "format_dimacs", "parse_dimacs", "read_dimacs", "write_dimacs",
    # distances
    "DistanceMatrix", "recover_all_distances", "recover_distances_from",
    "recognize_distance4_pairs", "extend_graph",
    # steiner
    "SQS", "BlockGraph", "validate_sqs", "neighborhood_block_graph",
    "enumerate_point_cliques", "sqs_from_point_cliques", "check_clique_bound",
    # reconstruction
    "Labeling", "reconstruct_extended", "reconstruct_perfect",
    "detect_parity_coordinate",
    # equivalence
    "EquivResult", "find_equivalence", "rank_invariant",
    # automorphisms
    "GraphAut", "make_graph_aut", "code_aut_to_graph_aut",
    "graph_aut_to_code_aut", "perfect_aut_transfer", "identity_labeling",
    "hamming_automorphisms", "vasilev_automorphisms", "extend_codemap",
    "sample_code_automorphisms",
]
