"""Clique-tensor spectral radius of graphs and desk-scale Turan-type searches."""

from .bounds import BoundReport, bound_report, clique_lower_bound, ess_reference, wilf_upper_bound
from .graph import (
    CliqueSet,
    Graph,
    GraphFormatError,
    chromatic_number,
    clique_count,
    contains_subgraph,
    encode_graph6,
    enumerate_cliques,
    gen_complete,
    gen_complete_multipartite,
    gen_random,
    gen_turan,
    parse_edge_list,
    parse_graph6,
    per_vertex_clique_counts,
)
from .search import ExtremalRecord, SearchSpec, clique_scaling_table, scaling_table, search
from .solver import (
    SolverConfig,
    SpectralResult,
    ascent_oracle,
    clique_components,
    clique_spectral_radius,
    complete_mu,
    power_iteration,
    turan_mu,
)
from .tensor import CliqueTensor

__version__ = "0.1.0"
