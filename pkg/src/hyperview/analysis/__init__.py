from .clustering import ClusteringResult, clustering_coefficient, count_ordered_triangles, count_two_paths
from .distribution import (
    REPORT_BINS,
    GainRow,
    PowerLawFit,
    PowerLawRegressor,
    SizeHistogram,
    clique_edges,
    default_fit_range,
    fit_power_law,
    potential_gain_table,
    size_histogram,
    spoke_edges,
)
from .spectral import ConvergenceError, SpectralDecomposition, eigendecompose, subhypergraph_centrality

__all__ = [
    "ClusteringResult",
    "ConvergenceError",
    "GainRow",
    "REPORT_BINS",
    "PowerLawFit",
    "PowerLawRegressor",
    "SizeHistogram",
    "SpectralDecomposition",
    "clique_edges",
    "clustering_coefficient",
    "count_ordered_triangles",
    "count_two_paths",
    "default_fit_range",
    "eigendecompose",
    "fit_power_law",
    "potential_gain_table",
    "size_histogram",
    "spoke_edges",
    "subhypergraph_centrality",
]
