"""Clique and extra-node graph views of a hypergraph."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import check_graph, check_hypergraph
from .hypergraph import Hypergraph

CLIQUE = "clique"
EXTRA_NODE = "extra_node"
VIEW_KINDS = (CLIQUE, EXTRA_NODE)

REAL = "real"
EXTRA = "extra"


@dataclass(frozen=True)
class GraphNode:
    label: str
    kind: str = REAL
    source: Optional[int] = None  # hyperedge index, extra nodes only


@dataclass(frozen=True)
class ExpandedGraph:
    """Simple weighted undirected graph; edges are ``(a, b, w)`` with ``a < b`` node indices."""

    nodes: tuple[GraphNode, ...]
    edges: tuple[tuple[int, int, float], ...]
    view_kind: str
    provenance: str = ""

    def __post_init__(self):
        if self.view_kind not in VIEW_KINDS:
            raise ValueError(f"view_kind must be one of {VIEW_KINDS}, got {self.view_kind!r}")
        n = len(self.nodes)
        if len({nd.label for nd in self.nodes}) != n:
            raise ValueError("node labels must be unique")
        pairs = set()
        for a, b, w in self.edges:
            if not (0 <= a < b < n):
                raise ValueError(f"edge ({a}, {b}) must satisfy 0 <= a < b < {n}")
            if (a, b) in pairs:
                raise ValueError(f"duplicate edge ({a}, {b})")
            if not w > 0:
                raise ValueError(f"edge ({a}, {b}) weight must be positive")
            pairs.add((a, b))

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def labels(self) -> list[str]:
        return [nd.label for nd in self.nodes]

    def real_indices(self) -> list[int]:
        return [i for i, nd in enumerate(self.nodes) if nd.kind == REAL]

    def extra_indices(self) -> list[int]:
        return [i for i, nd in enumerate(self.nodes) if nd.kind == EXTRA]

    def neighbors(self) -> list[list[int]]:
        adj = [[] for _ in self.nodes]
        for a, b, _ in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n_nodes, dtype=np.int64)
        for a, b, _ in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if not self.edges:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty, np.zeros(0)
        arr = np.array(self.edges, dtype=float)
        return arr[:, 0].astype(np.int64), arr[:, 1].astype(np.int64), arr[:, 2]

    def to_json(self) -> dict:
        labels = self.labels
        return {
            "view_kind": self.view_kind,
            "provenance": self.provenance,
            "nodes": [{"label": nd.label, "kind": nd.kind, "source": nd.source} for nd in self.nodes],
            "edges": [{"a": labels[a], "b": labels[b], "w": w} for a, b, w in self.edges],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ExpandedGraph":
        nodes = tuple(GraphNode(n["label"], n.get("kind", REAL), n.get("source")) for n in obj["nodes"])
        index = {nd.label: i for i, nd in enumerate(nodes)}
        edges = []
        for e in obj["edges"]:
            a, b = sorted((index[e["a"]], index[e["b"]]))
            w = e.get("w", 1)
            edges.append((a, b, int(w) if float(w).is_integer() else float(w)))
        edges.sort()
        return cls(nodes, tuple(edges), obj["view_kind"], obj.get("provenance", ""))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, sort_keys=True, indent=1)

    @classmethod
    def loads(cls, text: str) -> "ExpandedGraph":
        return cls.from_json(json.loads(text))


def _real_nodes(h: Hypergraph) -> list[GraphNode]:
    return [GraphNode(label, REAL, None) for label in h.nodes]


def _freeze(pairs: dict) -> tuple:
    return tuple((a, b, w) for (a, b), w in sorted(pairs.items()))


def clique_expansion(h: Hypergraph) -> ExpandedGraph:
    """Join every pair inside each hyperedge; shared pairs merge with summed weight."""
    check_hypergraph(h)
    pairs: dict[tuple[int, int], int] = {}
    for e in h.hyperedges:
        m = e.members
        for x in range(len(m)):
            for y in range(x + 1, len(m)):
                key = (m[x], m[y])
                pairs[key] = pairs.get(key, 0) + e.weight
    return ExpandedGraph(tuple(_real_nodes(h)), _freeze(pairs), CLIQUE, h.fingerprint())


def extra_node_name(attr_type: str, index: int) -> str:
    return f"{attr_type}#edge{index}"


def extra_node_expansion(h: Hypergraph) -> ExpandedGraph:
    """One private hub per hyperedge of size >= 3, a direct edge for size 2.

    Hubs are appended after the real nodes in hyperedge order and are never
    shared, so spokes cannot collide; only repeated size-2 pairs could, and
    those merge like clique edges.
    """
    check_hypergraph(h)
    nodes = _real_nodes(h)
    taken = set(h.nodes)
    pairs: dict[tuple[int, int], int] = {}
    for j, e in enumerate(h.hyperedges):
        if e.size == 2:
            key = e.members
            pairs[key] = pairs.get(key, 0) + e.weight
        elif e.size >= 3:
            name = extra_node_name(h.attr_type, j)
            if name in taken:
                raise ValueError(f"extra node name {name!r} collides with a real node label")
            taken.add(name)
            hub = len(nodes)
            nodes.append(GraphNode(name, EXTRA, j))
            for i in e.members:
                pairs[(i, hub)] = e.weight
    return ExpandedGraph(tuple(nodes), _freeze(pairs), EXTRA_NODE, h.fingerprint())


def expand(h: Hypergraph, view_kind: str) -> ExpandedGraph:
    if view_kind == CLIQUE:
        return clique_expansion(h)
    if view_kind == EXTRA_NODE:
        return extra_node_expansion(h)
    raise ValueError(f"unknown view kind {view_kind!r}")


def edge_gain(clique: ExpandedGraph, extra: ExpandedGraph) -> Optional[float]:
    """Clique edge count over extra-node edge count; None if the latter is zero."""
    check_graph(clique)
    check_graph(extra)
    if clique.view_kind != CLIQUE or extra.view_kind != EXTRA_NODE:
        raise ValueError("edge_gain expects (clique view, extra-node view)")
    if clique.provenance != extra.provenance:
        raise ValueError("views come from different hypergraphs")
    if extra.n_edges == 0:
        return None
    return clique.n_edges / extra.n_edges


class GraphExpander(TransformerMixin, BaseEstimator):
    """Stateless transformer turning a Hypergraph into one of its graph views."""

    def __init__(self, view_kind=CLIQUE):
        self.view_kind = view_kind

    def fit(self, X=None, y=None):
        if self.view_kind not in VIEW_KINDS:
            raise ValueError(f"view_kind must be one of {VIEW_KINDS}")
        return self

    def transform(self, X):
        return expand(X, self.view_kind)
