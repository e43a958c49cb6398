"""Input validation helpers shared by the estimators."""

import math

import numpy as np


def check_symmetric_matrix(a, name="matrix"):
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite entries")
    if not np.array_equal(a, a.T):
        raise ValueError(f"{name} is not symmetric")
    return a


def check_positive(value, name, integer=False):
    if integer and (not isinstance(value, (int, np.integer)) or isinstance(value, bool)):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if not math.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be positive, got {value!r}")
    return value


def check_unit_interval(value, name="value"):
    if not (0.0 <= value <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
    return float(value)


def check_hypergraph(h):
    from .hypergraph import Hypergraph

    if not isinstance(h, Hypergraph):
        raise TypeError(f"expected a Hypergraph, got {type(h).__name__}")
    return h


def check_graph(g, min_nodes=0):
    from .expand import ExpandedGraph

    if not isinstance(g, ExpandedGraph):
        raise TypeError(f"expected an ExpandedGraph, got {type(g).__name__}")
    if len(g.nodes) < min_nodes:
        raise ValueError(f"graph needs at least {min_nodes} node(s), has {len(g.nodes)}")
    return g
