"""Seeded synthetic publication corpora with community structure.

Each record belongs to one research topic.  Its organisations and keywords
are drawn mostly from that topic's pool, occasionally from another pool, so
the resulting hypergraphs have overlapping hyperedges and visible clusters.
Collaboration sizes follow a truncated power law.
"""

from __future__ import annotations

from importlib import resources

import numpy as np

from .ingest import PublicationRecord, parse_corpus

TOPICS = (
    ("bgo", "crystal", "scintillator", "calorimeter"),
    ("silicon", "pixel", "tracker", "radiation"),
    ("muon", "chamber", "drift", "trigger"),
    ("neutrino", "oscillation", "detector", "reactor"),
    ("photon", "calorimeter", "energy", "resolution"),
    ("dark", "matter", "search", "xenon"),
    ("gravitational", "wave", "interferometer", "laser"),
    ("plasma", "fusion", "tokamak", "confinement"),
)
COUNTRIES = ("CH", "FR", "DE", "IT", "US", "JP", "CN", "UK", "ES", "NL", "RU", "IN")


def _sizes(rng, n, exponent, k_min, k_max):
    ks = np.arange(k_min, k_max + 1)
    p = ks.astype(float) ** -exponent
    return rng.choice(ks, size=n, p=p / p.sum())


def _draw(rng, pool, others, k, p_home):
    chosen = []
    while len(chosen) < k:
        src = pool if rng.random() < p_home or not others else others[rng.integers(len(others))]
        cand = src[rng.integers(len(src))]
        if cand not in chosen:
            chosen.append(cand)
    return chosen


def generate_corpus(
    n_records: int = 200,
    seed: int = 0,
    n_topics: int = 6,
    orgs_per_topic: int = 50,
    keywords_per_topic: int = 50,
    size_exponent: float = 1.6,
    k_min: int = 2,
    k_max: int = 30,
    p_home: float = 0.85,
) -> list[PublicationRecord]:
    if not 1 <= n_topics <= len(TOPICS):
        raise ValueError(f"n_topics must be in [1, {len(TOPICS)}]")
    rng = np.random.default_rng(seed)
    org_pools = [
        [f"Org-{t}-{i:02d}" for i in range(orgs_per_topic)] for t in range(n_topics)
    ]
    kw_pools = [
        list(TOPICS[t]) + [f"{TOPICS[t][0]}-{i:02d}" for i in range(keywords_per_topic - len(TOPICS[t]))]
        for t in range(n_topics)
    ]
    org_sizes = _sizes(rng, n_records, size_exponent, k_min, k_max)
    kw_sizes = _sizes(rng, n_records, size_exponent, k_min, k_max)

    records = []
    for r in range(n_records):
        t = int(rng.integers(n_topics))
        other_orgs = [p for i, p in enumerate(org_pools) if i != t]
        other_kws = [p for i, p in enumerate(kw_pools) if i != t]
        orgs = _draw(rng, org_pools[t], other_orgs, int(org_sizes[r]), p_home)
        kws = _draw(rng, kw_pools[t], other_kws, min(int(kw_sizes[r]), keywords_per_topic), p_home)
        words = TOPICS[t]
        title = f"{words[0]} {words[1]} study {r}"
        abstract = f"We report on {words[2]} and {words[3]} measurements."
        countries = sorted({COUNTRIES[hash_index(o, len(COUNTRIES))] for o in orgs})
        records.append(
            PublicationRecord(
                f"syn{r:04d}", title, abstract,
                {"organisation": orgs, "keyword": kws, "country": countries},
            )
        )
    return records


def hash_index(label: str, modulo: int) -> int:
    """Stable (process-independent) bucket for a label."""
    return sum(label.encode("utf-8")) % modulo


def bundled_corpus() -> list[PublicationRecord]:
    """The 200-record synthetic corpus shipped with the package."""
    data = resources.files("hyperview").joinpath("data/synthetic_corpus.jsonl").read_bytes()
    return parse_corpus(data)


def bundled_corpus_path():
    return resources.files("hyperview").joinpath("data/synthetic_corpus.jsonl")
