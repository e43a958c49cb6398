"""ForceAtlas2-style force-directed layout (linear attraction, exact repulsion).

Forces per iteration:

* repulsion ``kr * (deg_i + 1) * (deg_j + 1) / d`` between every pair,
* attraction ``d * w ** delta`` along each edge,
* gravity ``kg * (deg_i + 1)`` towards the origin.

Step sizes follow the swing/traction scheme: a global speed
``tau * traction / swing`` that may rise by at most ``max_rise`` per
iteration, and a per-node speed damped by the node's own swing.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .._validation import check_graph, check_positive
from ..expand import ExpandedGraph
from .louvain import louvain
from .state import LayoutState


class LayoutDivergenceError(FloatingPointError):
    pass


@dataclass(frozen=True)
class LayoutParams:
    iterations: int = 1000
    kr: float = 10.0
    gravity: float = 1.0
    edge_weight_influence: float = 1.0
    jitter_tolerance: float = 1.0
    max_rise: float = 0.5
    local_speed: float = 0.1
    max_local_speed: float = 10.0
    init_scale: float = 10.0
    seed: int = 0

    def __post_init__(self):
        check_positive(self.iterations, "iterations", integer=True)
        for name in ("kr", "gravity", "jitter_tolerance", "max_rise", "local_speed",
                     "max_local_speed", "init_scale"):
            check_positive(getattr(self, name), name)
        if self.edge_weight_influence < 0:
            raise ValueError("edge_weight_influence must be >= 0")

    def to_dict(self) -> dict:
        return asdict(self)


def _initial_positions(n, params):
    rng = np.random.default_rng(params.seed)
    side = params.init_scale * max(1.0, np.sqrt(n))
    pos = rng.uniform(-0.5 * side, 0.5 * side, size=(n, 2))
    return pos - pos.mean(axis=0)


def _forces(pos, mass, mass_outer, src, dst, attract_w, kg):
    n = len(pos)
    x, y = pos[:, 0], pos[:, 1]
    dx = x[:, None] - x[None, :]
    dy = y[:, None] - y[None, :]
    dist2 = dx * dx + dy * dy
    dist2[dist2 == 0] = np.inf  # self pairs and coincident nodes exert nothing
    # kr * m_i * m_j / d along the unit vector (dx, dy) / d
    coef = mass_outer / dist2
    fx = (coef * dx).sum(axis=1)
    fy = (coef * dy).sum(axis=1)

    if len(src):
        # linear attraction: magnitude d * w along the unit vector, i.e. w * delta
        px = attract_w * (x[dst] - x[src])
        py = attract_w * (y[dst] - y[src])
        fx += np.bincount(src, px, n) - np.bincount(dst, px, n)
        fy += np.bincount(src, py, n) - np.bincount(dst, py, n)

    norm = np.sqrt(x * x + y * y)
    safe = np.where(norm > 0, norm, 1.0)
    pull = np.where(norm > 0, kg * mass / safe, 0.0)
    fx -= pull * x
    fy -= pull * y
    return np.stack([fx, fy], axis=1)


def run_forceatlas2(
    n: int,
    edges,
    params: LayoutParams,
    initial: Optional[np.ndarray] = None,
    trace: Optional[list] = None,
) -> np.ndarray:
    """Core loop on index-based input.  ``edges`` are ``(a, b, w)`` triples."""
    if n == 0:
        return np.zeros((0, 2))
    pos = _initial_positions(n, params) if initial is None else np.array(initial, dtype=np.float64)
    if pos.shape != (n, 2) or not np.all(np.isfinite(pos)):
        raise ValueError(f"initial positions must be a finite ({n}, 2) array")

    if edges:
        arr = np.array(edges, dtype=np.float64)
        src = arr[:, 0].astype(np.int64)
        dst = arr[:, 1].astype(np.int64)
        w = arr[:, 2]
    else:
        src = dst = np.zeros(0, dtype=np.int64)
        w = np.zeros(0)
    deg = np.bincount(np.concatenate([src, dst]), minlength=n).astype(np.float64)
    mass = deg + 1.0
    attract_w = w ** params.edge_weight_influence
    mass_outer = params.kr * np.outer(mass, mass)

    prev = np.zeros_like(pos)
    speed = 1.0
    for it in range(params.iterations):
        force = _forces(pos, mass, mass_outer, src, dst, attract_w, params.gravity)
        swing = np.sqrt(np.einsum("ij,ij->i", force - prev, force - prev))
        traction = 0.5 * np.sqrt(np.einsum("ij,ij->i", force + prev, force + prev))
        g_swing = float(mass @ swing)
        g_traction = float(mass @ traction)
        if g_swing > 0:
            target = params.jitter_tolerance * g_traction / g_swing
            speed = min(target, (1.0 + params.max_rise) * speed)
        local = params.local_speed * speed / (1.0 + speed * np.sqrt(swing))
        fnorm = np.sqrt(np.einsum("ij,ij->i", force, force))
        with np.errstate(divide="ignore"):
            cap = np.where(fnorm > 0, params.max_local_speed / fnorm, np.inf)
        local = np.minimum(local, cap)
        pos = pos + local[:, None] * force
        if not np.all(np.isfinite(pos)):
            raise LayoutDivergenceError(f"non-finite node position at iteration {it}")
        prev = force
        if trace is not None:
            trace.append(pos.copy())
    return pos


def force_atlas2(
    g: ExpandedGraph,
    params: Optional[LayoutParams] = None,
    initial: Optional[LayoutState] = None,
    clusters: Optional[np.ndarray] = None,
) -> LayoutState:
    """Lay out ``g`` and return a LayoutState in ``g``'s node order.

    Nodes are processed in label order internally, so the result for each
    label does not depend on how ``g`` lists its nodes.  When ``clusters``
    is not supplied, Louvain runs on ``g`` with the layout seed.
    """
    check_graph(g, min_nodes=1)
    params = params or LayoutParams()
    labels = g.labels
    order = sorted(range(g.n_nodes), key=labels.__getitem__)
    rank = np.empty(g.n_nodes, dtype=np.int64)
    rank[order] = np.arange(g.n_nodes)
    edges = sorted(
        (min(rank[a], rank[b]), max(rank[a], rank[b]), w) for a, b, w in g.edges
    )
    init = None
    if initial is not None:
        init, _ = initial.aligned([labels[i] for i in order])
    pos_sorted = run_forceatlas2(g.n_nodes, [(int(a), int(b), w) for a, b, w in edges], params, init)
    pos = pos_sorted[rank]

    if clusters is None:
        clusters, _, _ = louvain(g, seed=params.seed)
    return LayoutState(tuple(labels), pos, clusters, g.view_kind, False, params.seed, g.provenance)


class ForceAtlas2(TransformerMixin, BaseEstimator):
    """ForceAtlas2 layout as an estimator; ``fit_transform(graph)`` gives ``(n, 2)`` coordinates.

    ``fit`` also clusters the graph with Louvain (same seed) so that
    ``layout_`` carries both positions and community ids.
    """

    def __init__(self, iterations=1000, kr=10.0, gravity=1.0, edge_weight_influence=1.0,
                 jitter_tolerance=1.0, seed=0):
        self.iterations = iterations
        self.kr = kr
        self.gravity = gravity
        self.edge_weight_influence = edge_weight_influence
        self.jitter_tolerance = jitter_tolerance
        self.seed = seed

    def _params(self):
        return LayoutParams(
            iterations=self.iterations, kr=self.kr, gravity=self.gravity,
            edge_weight_influence=self.edge_weight_influence,
            jitter_tolerance=self.jitter_tolerance, seed=self.seed,
        )

    def fit(self, X, y=None, initial=None):
        self.layout_ = force_atlas2(X, self._params(), initial)
        self.embedding_ = self.layout_.positions
        return self

    def transform(self, X=None):
        check_is_fitted(self, "embedding_")
        if X is None:
            return self.embedding_
        pos, _ = self.layout_.aligned(X.labels)
        return pos

    def fit_transform(self, X, y=None, initial=None):
        return self.fit(X, initial=initial).embedding_
