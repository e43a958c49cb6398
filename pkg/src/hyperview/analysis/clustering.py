"""Hyper-triangle / 2-path clustering coefficient."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .._validation import check_hypergraph
from ..hypergraph import Hypergraph, adjacency_matrix


@dataclass(frozen=True)
class ClusteringResult:
    triangles: int
    two_paths: int
    coefficient: Optional[float]


def count_ordered_triangles(h: Hypergraph) -> int:
    """Ordered walks v_i E_p v_j E_q v_k E_r v_i, distinct vertices and distinct hyperedges.

    Starts from trace(A^3), which counts every hyperedge choice, then removes
    the choices where two or more of E_p, E_q, E_r coincide.  Those need a
    hyperedge holding all three vertices, so the correction is a sum over
    hyperedges of size >= 3.
    """
    adj = adjacency_matrix(h)
    total = int(np.trace(adj @ adj @ adj))
    for e in h.hyperedges:
        k = e.size
        if k < 3:
            continue
        idx = np.asarray(e.members)
        pair_sum = int(adj[np.ix_(idx, idx)].sum())
        # sum over ordered triples inside e of (A_ij + A_jk + A_ki - 2)
        total -= 3 * (k - 2) * pair_sum - 2 * k * (k - 1) * (k - 2)
    return total


def count_two_paths(h: Hypergraph, distinct_hyperedges: bool = False) -> int:
    """Ordered sequences v_i E_p v_j E_q v_k with three distinct vertices."""
    adj = adjacency_matrix(h)
    row = adj.sum(axis=1)
    total = int((row * row).sum() - (adj * adj).sum())
    if distinct_hyperedges:
        total -= sum(e.size * (e.size - 1) * (e.size - 2) for e in h.hyperedges)
    return total


def clustering_coefficient(h: Hypergraph, distinct_hyperedges: bool = False) -> ClusteringResult:
    """``6 * triangles / 2-paths``; ``coefficient`` is None when there are no 2-paths.

    ``triangles`` is the unordered count (ordered walks divided by 6).  Set
    ``distinct_hyperedges`` to also require E_p != E_q in a 2-path.
    """
    check_hypergraph(h)
    ordered = count_ordered_triangles(h)
    triangles = ordered // 6
    paths = count_two_paths(h, distinct_hyperedges)
    coef = None if paths == 0 else 6.0 * triangles / paths
    return ClusteringResult(triangles, paths, coef)
