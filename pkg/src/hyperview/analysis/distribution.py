"""Collaboration-size distributions, log-log power-law fits and edge-gain tables."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from .._validation import check_hypergraph
from ..hypergraph import Hypergraph


class SizeHistogram(dict):
    """Mapping size k -> number of collaborations of that size (positive counts only)."""

    def __init__(self, counts: Optional[Mapping[int, int]] = None):
        super().__init__()
        for k, c in sorted((counts or {}).items()):
            k, c = int(k), int(c)
            if k < 1:
                raise ValueError(f"hyperedge size must be >= 1, got {k}")
            if c < 0:
                raise ValueError(f"count for size {k} is negative")
            if c:
                self[k] = c

    @property
    def total(self) -> int:
        return sum(self.values())

    def sizes(self) -> list[int]:
        return sorted(self)


def size_histogram(h: Hypergraph) -> SizeHistogram:
    """Weight-expanded size counts: a hyperedge of weight w counts w times."""
    check_hypergraph(h)
    counts: dict[int, int] = {}
    for e in h.hyperedges:
        counts[e.size] = counts.get(e.size, 0) + e.weight
    return SizeHistogram(counts)


@dataclass(frozen=True)
class PowerLawFit:
    intercept: float
    exponent: float
    r_squared: float
    fit_range: tuple[int, int]
    n_points: int

    def predict(self, k):
        return 10.0 ** self.intercept * np.asarray(k, dtype=float) ** self.exponent


def default_fit_range(hist: SizeHistogram) -> tuple[int, int]:
    """Modal size up to the largest size still seen at least twice."""
    if not hist:
        raise ValueError("empty histogram")
    modal = min(hist, key=lambda k: (-hist[k], k))
    repeated = [k for k, c in hist.items() if c >= 2 and k >= modal]
    return modal, max(repeated) if repeated else modal


def _ols_loglog(k: np.ndarray, n: np.ndarray) -> tuple[float, float, float]:
    x = np.log10(k)
    y = np.log10(n)
    xm, ym = x.mean(), y.mean()
    sxx = np.sum((x - xm) ** 2)
    if sxx == 0:
        raise ValueError("power-law fit needs at least two distinct sizes")
    slope = np.sum((x - xm) * (y - ym)) / sxx
    intercept = ym - slope * xm
    ss_tot = np.sum((y - ym) ** 2)
    ss_res = np.sum((y - intercept - slope * x) ** 2)
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return float(intercept), float(slope), float(min(1.0, max(0.0, r2)))


def fit_power_law(hist: Mapping[int, int], fit_range: Optional[Sequence[int]] = None) -> PowerLawFit:
    """Least squares of log10(N) on log10(k): ``N ~ 10**intercept * k**exponent``."""
    hist = hist if isinstance(hist, SizeHistogram) else SizeHistogram(hist)
    lo, hi = fit_range if fit_range is not None else default_fit_range(hist)
    sizes = [k for k in hist.sizes() if lo <= k <= hi]
    if len(sizes) < 3:
        raise ValueError(
            f"power-law fit needs >= 3 sizes with positive counts in [{lo}, {hi}], got {len(sizes)}"
        )
    k = np.array(sizes, dtype=float)
    n = np.array([hist[s] for s in sizes], dtype=float)
    a, b, r2 = _ols_loglog(k, n)
    return PowerLawFit(a, b, r2, (int(lo), int(hi)), len(sizes))


class PowerLawRegressor(RegressorMixin, BaseEstimator):
    """Log-log least-squares power law as a scikit-learn regressor.

    ``fit(X, y)`` takes sizes ``X`` (shape ``(n,)`` or ``(n, 1)``) and
    positive counts ``y``.  ``predict`` returns ``10**intercept_ * X**exponent_``.
    """

    def __init__(self, fit_range=None):
        self.fit_range = fit_range

    def fit(self, X, y):
        k = np.asarray(X, dtype=float).reshape(-1)
        n = np.asarray(y, dtype=float).reshape(-1)
        if k.shape != n.shape:
            raise ValueError("X and y must have the same length")
        if np.any(k <= 0) or np.any(n <= 0):
            raise ValueError("sizes and counts must be positive for a log-log fit")
        if self.fit_range is not None:
            lo, hi = self.fit_range
            keep = (k >= lo) & (k <= hi)
            k, n = k[keep], n[keep]
        if len(np.unique(k)) < 3:
            raise ValueError("power-law fit needs at least 3 distinct sizes")
        self.intercept_, self.exponent_, self.r_squared_ = _ols_loglog(k, n)
        return self

    def predict(self, X):
        check_is_fitted(self, "exponent_")
        k = np.asarray(X, dtype=float).reshape(-1)
        return 10.0 ** self.intercept_ * k ** self.exponent_


# -- potential gain ----------------------------------------------------------------

REPORT_BINS = (
    (1, 1), (2, 2), (3, 3), (4, 4), (5, 5),
    (6, 10), (11, 15), (16, 20), (21, 50), (51, 100), (101, None),
)


def clique_edges(k: int) -> int:
    return k * (k - 1) // 2


def spoke_edges(k: int) -> int:
    """Edges drawn for one size-k hyperedge in the extra-node view."""
    if k <= 1:
        return 0
    if k == 2:
        return 1
    return k


@dataclass(frozen=True)
class GainRow:
    low: int
    high: Optional[int]
    count: int
    clique_edges: Optional[int]
    extra_node_edges: Optional[int]
    gain: Optional[float]

    @property
    def label(self) -> str:
        if self.high is None:
            return f"k>{self.low - 1}"
        if self.low == self.high:
            return f"k={self.low}"
        return f"{self.low}<=k<={self.high}"


def _row(low, high, count, clique, extra, edgeless):
    if edgeless:
        return GainRow(low, high, count, None, None, None)
    gain = clique / extra if extra else None
    return GainRow(low, high, count, clique, extra, gain)


def potential_gain_table(
    hist: Mapping[int, int], bin_spec: Sequence[tuple[int, Optional[int]]] = REPORT_BINS
) -> tuple[list[GainRow], GainRow]:
    """Per-size-range clique vs extra-node edge counts, assuming no overlap.

    Returns the rows and a totals row.  A range holding only size-1
    hyperedges has no edges in either view; its edge and gain fields are None.
    """
    hist = hist if isinstance(hist, SizeHistogram) else SizeHistogram(hist)
    covered = set()
    rows = []
    for low, high in bin_spec:
        sizes = [k for k in hist if k >= low and (high is None or k <= high)]
        covered.update(sizes)
        count = sum(hist[k] for k in sizes)
        clique = sum(hist[k] * clique_edges(k) for k in sizes)
        extra = sum(hist[k] * spoke_edges(k) for k in sizes)
        edgeless = high is not None and high <= 1
        rows.append(_row(low, high, count, clique, extra, edgeless))
    missing = sorted(set(hist) - covered)
    if missing:
        raise ValueError(f"bin specification does not cover sizes {missing}")
    tot_clique = sum(r.clique_edges or 0 for r in rows)
    tot_extra = sum(r.extra_node_edges or 0 for r in rows)
    total = _row(
        rows[0].low if rows else 1, None, sum(r.count for r in rows), tot_clique, tot_extra, False
    )
    return rows, total
