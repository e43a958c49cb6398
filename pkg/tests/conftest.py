import sys
from pathlib import Path

import numpy as np
import pytest

from hyperview.hypergraph import build_hypergraph

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"


def random_hypergraph(rng, max_nodes=30, max_edges=40, max_size=None, attr="org"):
    """Seeded random hypergraph; labels n0..n{k}, records may repeat sets."""
    n = int(rng.integers(1, max_nodes + 1))
    m = int(rng.integers(0, max_edges + 1))
    cap = n if max_size is None else min(n, max_size)
    entries = []
    for r in range(m):
        k = int(rng.integers(1, cap + 1))
        members = rng.choice(n, size=k, replace=False)
        entries.append((f"r{r}", {f"n{i:02d}" for i in members}))
    return build_hypergraph(entries, attr)


@pytest.fixture
def overlap3():
    """Three overlapping hyperedges {1..5}, {1,2,3}, {3,4,5}."""
    return build_hypergraph(
        [("p1", {"1", "2", "3", "4", "5"}), ("p2", {"1", "2", "3"}), ("p3", {"3", "4", "5"})],
        "org",
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
