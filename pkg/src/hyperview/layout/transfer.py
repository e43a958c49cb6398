"""Carry a layout from one view of a hypergraph to the other."""

from __future__ import annotations

from collections import Counter

import numpy as np

from .._validation import check_graph
from ..expand import EXTRA, ExpandedGraph
from .state import LayoutState


def _majority(clusters) -> int:
    counts = Counter(int(c) for c in clusters)
    top = max(counts.values())
    return min(c for c, k in counts.items() if k == top)


def transfer_coordinates(
    source: LayoutState, from_view: ExpandedGraph, to_view: ExpandedGraph
) -> LayoutState:
    """Copy real-node positions; put each extra node at its members' isobarycenter.

    Going clique -> extra-node creates the hubs; going extra-node -> clique
    drops them.  Hubs take the most common cluster among their members
    (lowest id on ties).
    """
    check_graph(from_view)
    check_graph(to_view)
    if source.computed_on != from_view.view_kind:
        raise ValueError(
            f"layout was computed on {source.computed_on!r}, not on the {from_view.view_kind!r} view"
        )
    if from_view.provenance != to_view.provenance or (
        source.provenance and source.provenance != from_view.provenance
    ):
        raise ValueError("layout and views come from different hypergraphs")

    n = to_view.n_nodes
    pos = np.zeros((n, 2))
    clusters = np.zeros(n, dtype=np.int64)
    extras = []
    for i, node in enumerate(to_view.nodes):
        if node.kind == EXTRA:
            extras.append(i)
            continue
        if node.label not in source:
            raise ValueError(f"source layout has no position for real node {node.label!r}")
        pos[i] = source.position_of(node.label)
        clusters[i] = source.cluster_of(node.label)

    if extras:
        nbrs = to_view.neighbors()
        for i in extras:
            members = nbrs[i]
            if not members:
                raise ValueError(f"extra node {to_view.nodes[i].label!r} has no members")
            pos[i] = pos[members].sum(axis=0) / len(members)
            clusters[i] = _majority(clusters[members])

    return LayoutState(
        to_view.labels, pos, clusters, source.computed_on, True, source.seed, to_view.provenance
    )
