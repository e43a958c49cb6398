"""Positioned and clustered views, and how they serialise."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from ..expand import VIEW_KINDS


@dataclass(eq=False)
class LayoutState:
    labels: tuple[str, ...]
    positions: np.ndarray  # (n, 2) float64, row i belongs to labels[i]
    clusters: np.ndarray  # (n,) int64
    computed_on: str
    transferred: bool = False
    seed: int = 0
    provenance: str = ""
    _index: dict = field(default=None, init=False, repr=False)

    def __post_init__(self):
        self.labels = tuple(self.labels)
        self.positions = np.asarray(self.positions, dtype=np.float64).reshape(len(self.labels), 2)
        self.clusters = np.asarray(self.clusters, dtype=np.int64).reshape(len(self.labels))
        if self.computed_on not in VIEW_KINDS:
            raise ValueError(f"computed_on must be one of {VIEW_KINDS}")
        if not np.all(np.isfinite(self.positions)):
            raise ValueError("positions must be finite")
        self._index = {label: i for i, label in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise ValueError("layout labels must be unique")

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label):
        return label in self._index

    def position_of(self, label) -> np.ndarray:
        return self.positions[self._index[label]]

    def cluster_of(self, label) -> int:
        return int(self.clusters[self._index[label]])

    def aligned(self, labels) -> tuple[np.ndarray, np.ndarray]:
        """Positions and clusters reordered to ``labels``."""
        missing = [lb for lb in labels if lb not in self._index]
        if missing:
            raise KeyError(f"layout has no position for {missing[:5]}")
        idx = np.array([self._index[lb] for lb in labels], dtype=np.int64)
        return self.positions[idx], self.clusters[idx]

    def to_json(self) -> dict:
        return {
            "computed_on": self.computed_on,
            "transferred": self.transferred,
            "seed": self.seed,
            "provenance": self.provenance,
            "nodes": [
                {"label": lb, "x": float(p[0]), "y": float(p[1]), "cluster": int(c)}
                for lb, p, c in zip(self.labels, self.positions, self.clusters)
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LayoutState":
        nodes = obj["nodes"]
        return cls(
            labels=tuple(n["label"] for n in nodes),
            positions=np.array([[n["x"], n["y"]] for n in nodes], dtype=np.float64).reshape(-1, 2),
            clusters=np.array([n["cluster"] for n in nodes], dtype=np.int64),
            computed_on=obj["computed_on"],
            transferred=bool(obj.get("transferred", False)),
            seed=int(obj.get("seed", 0)),
            provenance=obj.get("provenance", ""),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, sort_keys=True, indent=1)

    @classmethod
    def loads(cls, text: str) -> "LayoutState":
        return cls.from_json(json.loads(text))
