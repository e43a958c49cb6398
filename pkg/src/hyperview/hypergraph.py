"""Weighted attribute hypergraphs and their structural matrices."""

from __future__ import annotations

import hashlib
import json
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_hypergraph


@dataclass(frozen=True)
class Hyperedge:
    members: tuple[int, ...]
    weight: int = 1
    sources: tuple[str, ...] = ()

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Hypergraph:
    """Node labels plus a family of distinct, weighted hyperedges.

    Identical member sets never appear twice: duplicates are merged at
    construction and their weights summed, so the hypergraph is simple.
    """

    nodes: tuple[str, ...]
    hyperedges: tuple[Hyperedge, ...]
    attr_type: str = ""
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.nodes)
        if len(set(self.nodes)) != n:
            raise ValueError("node labels must be unique")
        seen = set()
        for j, e in enumerate(self.hyperedges):
            if not e.members:
                raise ValueError(f"hyperedge {j} is empty")
            if list(e.members) != sorted(set(e.members)):
                raise ValueError(f"hyperedge {j} members must be sorted and distinct")
            if e.members[0] < 0 or e.members[-1] >= n:
                raise ValueError(f"hyperedge {j} references a node out of range")
            if e.weight < 1:
                raise ValueError(f"hyperedge {j} weight must be a positive integer")
            if e.members in seen:
                raise ValueError(f"hyperedge {j} duplicates an earlier member set")
            seen.add(e.members)
        object.__setattr__(self, "_index", {label: i for i, label in enumerate(self.nodes)})

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_hyperedges(self) -> int:
        return len(self.hyperedges)

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown node {label!r}") from None

    def member_labels(self, j: int) -> tuple[str, ...]:
        return tuple(self.nodes[i] for i in self.hyperedges[j].members)

    def fingerprint(self) -> str:
        """Short digest of the labels and member sets; ties views to their source."""
        canon = json.dumps(
            [self.attr_type, list(self.nodes), [list(e.members) for e in self.hyperedges]],
            ensure_ascii=False,
        )
        return hashlib.sha1(canon.encode("utf-8")).hexdigest()[:16]

    def to_json(self) -> dict:
        return {
            "attr_type": self.attr_type,
            "nodes": list(self.nodes),
            "hyperedges": [
                {"members": list(e.members), "weight": e.weight, "sources": list(e.sources)}
                for e in self.hyperedges
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Hypergraph":
        edges = tuple(
            Hyperedge(tuple(e["members"]), int(e.get("weight", 1)), tuple(e.get("sources", ())))
            for e in obj["hyperedges"]
        )
        return cls(tuple(obj["nodes"]), edges, obj.get("attr_type", ""))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, sort_keys=True, indent=1)

    @classmethod
    def loads(cls, text: str) -> "Hypergraph":
        return cls.from_json(json.loads(text))


def build_hypergraph(
    entries: Iterable[tuple[str, Iterable[str]]], attr_type: str = ""
) -> Hypergraph:
    """Merge per-record attribute sets into a weighted hypergraph.

    Nodes are the sorted union of all values.  Hyperedges are ordered by
    (size, member indices), which makes the result independent of the entry
    order.
    """
    groups: dict[frozenset, list[str]] = {}
    for record_id, values in entries:
        key = frozenset(values)
        if not key:
            raise ValueError(f"entry {record_id!r} has an empty attribute set")
        groups.setdefault(key, []).append(record_id)

    nodes = tuple(sorted(set().union(*groups))) if groups else ()
    index = {label: i for i, label in enumerate(nodes)}
    edges = []
    for key, sources in groups.items():
        members = tuple(sorted(index[v] for v in key))
        edges.append(Hyperedge(members, len(sources), tuple(sorted(sources))))
    edges.sort(key=lambda e: (len(e.members), e.members))
    return Hypergraph(nodes, tuple(edges), attr_type)


def incidence_matrix(h: Hypergraph) -> np.ndarray:
    """0/1 matrix, nodes by hyperedges.  Weights are ignored."""
    check_hypergraph(h)
    inc = np.zeros((h.n_nodes, h.n_hyperedges), dtype=np.int64)
    for j, e in enumerate(h.hyperedges):
        inc[list(e.members), j] = 1
    return inc


def adjacency_matrix(h: Hypergraph) -> np.ndarray:
    """Co-membership counts: entry (i, j) is the number of hyperedges holding both."""
    check_hypergraph(h)
    adj = np.zeros((h.n_nodes, h.n_nodes), dtype=np.int64)
    for e in h.hyperedges:
        idx = np.asarray(e.members)
        adj[np.ix_(idx, idx)] += 1
    np.fill_diagonal(adj, 0)
    return adj


def weighted_adjacency_matrix(h: Hypergraph) -> np.ndarray:
    """Like :func:`adjacency_matrix` but each hyperedge counts with its weight."""
    check_hypergraph(h)
    adj = np.zeros((h.n_nodes, h.n_nodes), dtype=np.int64)
    for e in h.hyperedges:
        idx = np.asarray(e.members)
        adj[np.ix_(idx, idx)] += e.weight
    np.fill_diagonal(adj, 0)
    return adj


def degree_vector(h: Hypergraph) -> np.ndarray:
    check_hypergraph(h)
    deg = np.zeros(h.n_nodes, dtype=np.int64)
    for e in h.hyperedges:
        deg[list(e.members)] += 1
    return deg


@dataclass(frozen=True)
class HypergraphSummary:
    order: int
    rank: Optional[int]
    anti_rank: Optional[int]
    hyperedge_count: int
    collaboration_count: int
    average_hyperedge_size: Optional[float]
    is_simple: bool = True


def summary_stats(h: Hypergraph) -> HypergraphSummary:
    """Order, rank, anti-rank and the weight-expanded mean hyperedge size.

    ``rank``, ``anti_rank`` and the average are ``None`` when there are no
    hyperedges.
    """
    check_hypergraph(h)
    if not h.hyperedges:
        return HypergraphSummary(h.n_nodes, None, None, 0, 0, None)
    sizes = [e.size for e in h.hyperedges]
    total_weight = sum(e.weight for e in h.hyperedges)
    avg = sum(e.weight * e.size for e in h.hyperedges) / total_weight
    return HypergraphSummary(
        order=h.n_nodes,
        rank=max(sizes),
        anti_rank=min(sizes),
        hyperedge_count=h.n_hyperedges,
        collaboration_count=total_weight,
        average_hyperedge_size=avg,
    )


def node_distance(h: Hypergraph, u: str, v: str) -> float:
    """Minimal number of hyperedges chaining ``u`` to ``v``.

    Returns an ``int`` for reachable pairs and ``math.inf`` otherwise.
    """
    check_hypergraph(h)
    src, dst = h.index_of(u), h.index_of(v)
    if src == dst:
        return 0
    node_edges = [[] for _ in range(h.n_nodes)]
    for j, e in enumerate(h.hyperedges):
        for i in e.members:
            node_edges[i].append(j)

    dist = {src: 0}
    used_edges = set()
    queue = deque([src])
    while queue:
        i = queue.popleft()
        for j in node_edges[i]:
            if j in used_edges:
                continue
            used_edges.add(j)
            for k in h.hyperedges[j].members:
                if k not in dist:
                    dist[k] = dist[i] + 1
                    if k == dst:
                        return dist[k]
                    queue.append(k)
    return math.inf


class HypergraphBuilder(TransformerMixin, BaseEstimator):
    """Estimator wrapper: records in, weighted attribute hypergraph out.

    Parameters
    ----------
    attr_type : str
        Attribute type whose per-record sets become hyperedges.
    query : str or None
        Optional boolean search applied before extraction.

    Attributes
    ----------
    hypergraph_ : Hypergraph
    n_records_ : int
        Number of records left after the search.
    """

    def __init__(self, attr_type="organisation", query=None):
        self.attr_type = attr_type
        self.query = query

    def fit(self, X, y=None):
        self.hypergraph_, self.n_records_ = self._build(X)
        return self

    def transform(self, X=None):
        check_is_fitted(self, "hypergraph_")
        if X is None:
            return self.hypergraph_
        return self._build(X)[0]

    def _build(self, records):
        from .ingest import extract_attribute_sets, filter_records

        records = list(records)
        if self.query:
            records = filter_records(records, self.query)
        entries = extract_attribute_sets(records, self.attr_type)
        return build_hypergraph(entries, self.attr_type), len(records)
