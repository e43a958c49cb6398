"""Two-phase Louvain modularity optimisation on weighted simple graphs."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .._validation import check_symmetric_matrix
from ..expand import ExpandedGraph


def _weighted_edges(g):
    """Return ``(n, [(a, b, w), ...])`` from an ExpandedGraph or a symmetric weight matrix."""
    if isinstance(g, ExpandedGraph):
        return g.n_nodes, [(a, b, float(w)) for a, b, w in g.edges]
    w = check_symmetric_matrix(g, "weight matrix")
    if np.any(np.diag(w) != 0):
        raise ValueError("weight matrix must have a zero diagonal")
    if np.any(w < 0):
        raise ValueError("weights must be nonnegative")
    a, b = np.nonzero(np.triu(w, 1))
    return w.shape[0], [(int(i), int(j), float(w[i, j])) for i, j in zip(a, b)]


def modularity(g, labels) -> float:
    """Weighted Newman modularity of the partition ``labels``; 0 for an edgeless graph."""
    n, edges = _weighted_edges(g)
    labels = np.asarray(labels)
    if labels.shape != (n,):
        raise ValueError(f"labels must have shape ({n},)")
    m2 = 2.0 * sum(w for _, _, w in edges)
    if m2 == 0:
        return 0.0
    k = np.zeros(n)
    inside = 0.0
    for a, b, w in edges:
        k[a] += w
        k[b] += w
        if labels[a] == labels[b]:
            inside += 2.0 * w
    tot = {}
    for i, c in enumerate(labels):
        tot[c] = tot.get(c, 0.0) + k[i]
    return inside / m2 - sum(t * t for t in tot.values()) / (m2 * m2)


class _Level:
    """Weighted graph with self-loops; ``adj[i][j]`` summed over ordered pairs."""

    def __init__(self, n, adj):
        self.n = n
        self.adj = adj
        self.k = [sum(row.values()) for row in adj]
        self.m2 = sum(self.k)

    @classmethod
    def from_edges(cls, n, edges):
        adj = [dict() for _ in range(n)]
        for a, b, w in edges:
            adj[a][b] = adj[a].get(b, 0.0) + w
            adj[b][a] = adj[b].get(a, 0.0) + w
        return cls(n, adj)

    def modularity(self, comm):
        inside = {}
        tot = {}
        for i in range(self.n):
            c = comm[i]
            tot[c] = tot.get(c, 0.0) + self.k[i]
            for j, w in self.adj[i].items():
                if comm[j] == c:
                    inside[c] = inside.get(c, 0.0) + w
        m2 = self.m2
        return sum(inside.values()) / m2 - sum(t * t for t in tot.values()) / (m2 * m2)

    def aggregate(self, comm):
        n_new = max(comm) + 1
        adj = [dict() for _ in range(n_new)]
        for i in range(self.n):
            ci = comm[i]
            row = adj[ci]
            for j, w in self.adj[i].items():
                cj = comm[j]
                row[cj] = row.get(cj, 0.0) + w
        return _Level(n_new, adj)


def _move_nodes(level, rng, tol):
    """Greedy local moves; returns the community of each node and whether anything moved."""
    n, m2 = level.n, level.m2
    comm = list(range(n))
    tot = list(level.k)
    order = rng.permutation(n)
    moved_any = False
    while True:
        moved = False
        for i in order:
            i = int(i)
            ki = level.k[i]
            own = comm[i]
            links = {}
            for j, w in level.adj[i].items():
                if j != i:
                    links[comm[j]] = links.get(comm[j], 0.0) + w
            tot[own] -= ki
            own_gain = links.get(own, 0.0) - tot[own] * ki / m2
            best, best_gain = own, own_gain
            for c in sorted(links):
                gain = links[c] - tot[c] * ki / m2
                if gain > best_gain or (gain == best_gain and c < best):
                    best, best_gain = c, gain
            # gains above are scaled by m = m2 / 2 relative to true modularity changes
            if best != own and (best_gain - own_gain) / (m2 / 2.0) > tol:
                comm[i] = best
                moved = True
            tot[comm[i]] += ki
        if not moved:
            break
        moved_any = True
    # renumber by first appearance in node order so aggregation is deterministic
    remap = {}
    for c in comm:
        if c not in remap:
            remap[c] = len(remap)
    return [remap[c] for c in comm], moved_any


def louvain(g, seed: int = 0, tol: float = 1e-7):
    """Partition ``g`` by Louvain.

    Returns ``(labels, modularity, history)`` where ``labels`` are community
    ids per node (numbered by first appearance) and ``history`` lists the
    modularity reached after each aggregation level, measured on the
    original graph.
    """
    n, edges = _weighted_edges(g)
    if n == 0:
        raise ValueError("graph has no nodes")
    if not edges:
        return np.arange(n), 0.0, [0.0]

    rng = np.random.default_rng(seed)
    level = _Level.from_edges(n, edges)
    membership = list(range(n))
    history = [level.modularity(membership)]
    while True:
        comm, moved = _move_nodes(level, rng, tol)
        if not moved:
            break
        membership = [comm[c] for c in membership]
        history.append(level.modularity(comm))
        level = level.aggregate(comm)
    labels = np.asarray(membership)
    return labels, modularity(g, labels), history


class Louvain(ClusterMixin, BaseEstimator):
    """Louvain community detection with seeded, reproducible visit order.

    Parameters
    ----------
    seed : int
        Seeds the node visit order at every level.
    tol : float
        Minimum modularity gain for a node move.

    Attributes
    ----------
    labels_ : ndarray of shape (n_nodes,)
    modularity_ : float
    history_ : list of float
        Modularity after each level, non-decreasing.
    """

    def __init__(self, seed=0, tol=1e-7):
        self.seed = seed
        self.tol = tol

    def fit(self, X, y=None):
        self.labels_, self.modularity_, self.history_ = louvain(X, self.seed, self.tol)
        self.n_communities_ = int(self.labels_.max()) + 1
        return self
