"""Braces and matching covered bipartite graphs: tight cuts, thin edges,
expansions and exhaustive small-order enumeration."""

from .graph import (
    BipartiteGraph,
    GraphError,
    GraphFormatError,
    Shore,
    add_edge,
    bi_split,
    bicontract,
    build,
    contract_shore,
    delete_edge,
    delete_edges,
    format_graph,
    make_shore,
    parse_graph,
    read_graph,
    retract,
    underlying_simple,
)
from .iso import CanonicalForm, are_isomorphic, canonical_form
from .matching import has_perfect_matching, is_brace, is_matching_covered, maximum_matching, surplus
from .cuts import DecompositionResult, find_nontrivial_tight_cut, is_tight_cut, tight_cut_decomposition
from .edges import (
    EdgeClassification,
    classify_edges,
    edge_index,
    is_minimal_brace,
    is_removable,
    is_strictly_thin,
    is_superfluous,
    is_thin,
    non_superfluous_certificate,
)
from .expand import (
    MppCertificate,
    all_expansions,
    expand_index_one,
    expand_index_two,
    expand_index_zero,
    find_mpp,
    stable_extension,
    verify_narrow,
)
from .families import is_mccuaig, make
from .enumeration import Corpus, brute_force_graphs, generate_braces, minimal_braces, verify_bound

__version__ = "0.1.0"
