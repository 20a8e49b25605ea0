"""Combinatorics of binomial edge ideals on small graphs.

Cutsets, unmixedness, accessibility, strong unmixedness, the initial-ideal
simplicial complex with its Serre S2 check, structured graph families, and
an exhaustive classification pipeline with a CLI front end.
"""

from .canon import CanonSizeError, canonical_form, certificate, relabel
from .complexes import (
    FacetComplex,
    MonomialSet,
    S2Report,
    admissible_path_generators,
    f_vector,
    facets_from_cutsets,
    format_facets,
    format_monomials,
    h_vector,
    initial_complex,
    is_s2,
    link,
    minimal_nonfaces,
    multiplicity,
    s2_report,
)
from .cutsets import (
    AccessibilityReport,
    CutsetFamily,
    DecompositionTree,
    UnmixednessReport,
    accessibility,
    cutset_candidates,
    cutsets,
    decompose,
    is_accessible,
    is_cutset,
    is_cutset_definitional,
    is_indecomposable,
    is_strongly_unmixed,
    is_unmixed,
    iter_cutsets,
    unmixedness,
)
from .families import (
    ChainSpec,
    NotAChainError,
    SetupReport,
    WhiskeredBlock,
    assemble_whiskered_block,
    block_with_whiskers,
    chain_block,
    chain_of_cycles,
    chain_setup_report,
    check_setup,
    helm,
    rank3_catalog,
    star_of_cliques,
    strip_whiskers,
    wheel,
)
from .graphs import (
    Graph,
    blocks,
    complete_graph,
    components,
    cutpoints,
    cycle_graph,
    cycle_rank,
    decode_graph6,
    delete_vertices,
    encode_graph6,
    format_edge_list,
    from_edges,
    induced_subgraph,
    is_connected,
    mask_of,
    parse_edge_list,
    path_graph,
    saturate,
)
from .pipeline import (
    ClassRecord,
    PipelineOptions,
    RunSummary,
    TheoremContradictionError,
    classify,
    connected_certificates,
    enumerate_connected,
    run_pipeline,
    verify_equivalence,
)

__version__ = "0.1.0"
