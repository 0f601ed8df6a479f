"""Exact desk-scale search tools for forbidden subgraphs of hypercubes."""

from .construct import (
    MarkedGraph,
    complete_bipartite,
    cycle,
    glue_at_vertex,
    h_graph,
    path,
    star_of_copies,
    subdivide,
    theta,
)
from .cubical import (
    NiceColoring,
    coloring_to_embedding,
    embed_in_hypercube,
    embedding_to_coloring,
    find_nice_coloring,
    verify_nice_coloring,
)
from .graphs import (
    Bipartition,
    BlockDecomposition,
    CopyEnumeration,
    Embedding,
    Graph,
    GraphError,
    NotBipartiteError,
    ResourceLimitError,
    bipartition,
    blocks,
    build_hypercube,
    enumerate_copies,
    layer_subgraph,
)
from .represent import (
    Hypergraph,
    Representation,
    blocks_have_representations,
    find_representation,
    glue_bottom,
    glue_top,
    is_k_partite,
    pad_representation,
    pole_distance_scan,
    theta_representation,
    verify_representation,
)
from .search import SearchBudget, SearchOutcome
from .turan import (
    ExtremalResult,
    StarCountReport,
    density_sequence,
    extremal_number,
    hypergraph_extremal,
    middle_mass,
    star_count_identity,
    up_set_full_vertices,
)

__version__ = "0.1.0"
FORMAT_VERSION = 1
