"""End-to-end comparison run: corpus -> hypergraph -> two views -> layouts -> images -> report."""

from __future__ import annotations

import json
import logging
import re
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .expand import CLIQUE, EXTRA_NODE, clique_expansion, edge_gain, extra_node_expansion
from .hypergraph import build_hypergraph, summary_stats
from .ingest import extract_attribute_sets, filter_records, read_corpus
from .layout import LayoutParams, force_atlas2, louvain, transfer_coordinates
from .render import RenderStyle, clarity, clarity_gain, entropy, render_view
from .report import ProtocolResult, ViewReport, report_text

log = logging.getLogger(__name__)


class StageError(RuntimeError):
    def __init__(self, stage, exc):
        super().__init__(f"{stage} stage failed: {exc}")
        self.stage = stage


@dataclass
class RunConfig:
    corpus: str
    out_dir: str
    query: Optional[str] = None
    attr_types: Sequence[str] = ("organisation",)
    layout: LayoutParams = field(default_factory=LayoutParams)
    style: RenderStyle = field(default_factory=RenderStyle)
    layout_on: Sequence[str] = (CLIQUE, EXTRA_NODE)
    search_id: Optional[str] = None
    transfer: bool = True
    png: bool = False

    @property
    def seed(self) -> int:
        return self.layout.seed

    def resolved_search_id(self) -> str:
        if self.search_id:
            return self.search_id
        if not self.query:
            return "all"
        slug = re.sub(r"[^A-Za-z0-9]+", "-", self.query).strip("-").lower()
        return slug[:60] or "search"

    def to_json(self) -> dict:
        d = asdict(self)
        del d["out_dir"]
        d["attr_types"] = list(self.attr_types)
        d["layout_on"] = list(self.layout_on)
        d["style"]["palette"] = [list(c) for c in self.style.palette]
        return d


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (ValueError, KeyError, FloatingPointError, OSError) as exc:
        raise StageError(name, exc) from exc


def _write(path: Path, text: str):
    path.write_text(text, encoding="utf-8", newline="\n")


def _protocol(layout_on, views, states, style, out: Path, png: bool) -> ProtocolResult:
    images = {}
    clar = {CLIQUE: None, EXTRA_NODE: None}
    rendered = {}
    for kind in (CLIQUE, EXTRA_NODE):
        if kind not in states:
            continue
        img = _stage("render", render_view, views[kind], states[kind], style)
        name = f"{kind}_layout_on_{layout_on}"
        img.save_ppm(out / f"{name}.ppm")
        if png:
            img.save_png(out / f"{name}.png")
        images[kind] = f"{name}.ppm"
        clar[kind] = clarity(img)
        rendered[kind] = img
    return ProtocolResult(
        layout_on=layout_on,
        clarity_clique=clar[CLIQUE],
        clarity_extra=clar[EXTRA_NODE],
        clarity_gain=clarity_gain(rendered[EXTRA_NODE], rendered[CLIQUE]) if len(rendered) == 2 else None,
        entropy_clique=None if clar[CLIQUE] is None else entropy(clar[CLIQUE]),
        entropy_extra=None if clar[EXTRA_NODE] is None else entropy(clar[EXTRA_NODE]),
        images=images,
    )


def run_attr(records, attr_type: str, config: RunConfig, n_records: int) -> ViewReport:
    search_id = config.resolved_search_id()
    out = Path(config.out_dir) / search_id / attr_type
    out.mkdir(parents=True, exist_ok=True)

    entries = extract_attribute_sets(records, attr_type)
    h = _stage("build", build_hypergraph, entries, attr_type)
    stats = summary_stats(h)
    _write(out / "hypergraph.json", h.dumps())

    views = {CLIQUE: _stage("expand", clique_expansion, h), EXTRA_NODE: _stage("expand", extra_node_expansion, h)}
    report = ViewReport(
        search_id=search_id,
        attr_type=attr_type,
        query=config.query,
        seed=config.seed,
        records=n_records,
        collaborations=stats.collaboration_count,
        hyperedges=stats.hyperedge_count,
        average_size=stats.average_hyperedge_size,
        clique_nodes=views[CLIQUE].n_nodes,
        clique_edges=views[CLIQUE].n_edges,
        extra_nodes=views[EXTRA_NODE].n_nodes,
        extra_edges=views[EXTRA_NODE].n_edges,
        edge_gain=edge_gain(views[CLIQUE], views[EXTRA_NODE]),
    )
    if h.n_hyperedges == 0:
        log.info("%s/%s: no collaborations, skipping layout and rendering", search_id, attr_type)
    else:
        for kind in (CLIQUE, EXTRA_NODE):
            _write(out / f"{kind}.json", views[kind].dumps())
        for layout_on in config.layout_on:
            other = EXTRA_NODE if layout_on == CLIQUE else CLIQUE
            g = views[layout_on]
            labels, _, _ = _stage("cluster", louvain, g, config.seed)
            computed = _stage("layout", force_atlas2, g, config.layout, None, labels)
            _write(out / f"layout_on_{layout_on}.json", computed.dumps())
            states = {layout_on: computed}
            if config.transfer:
                moved = _stage("transfer", transfer_coordinates, computed, g, views[other])
                _write(out / f"layout_on_{layout_on}_to_{other}.json", moved.dumps())
                states[other] = moved
            report.protocols.append(_protocol(layout_on, views, states, config.style, out, config.png))

    _write(out / "report.json", report.dumps())
    _write(out / "report.txt", report_text(report))
    return report


def run_pipeline(config: RunConfig) -> list[ViewReport]:
    """Run both layout protocols for every attribute type; returns one report per type."""
    records = _stage("ingest", read_corpus, config.corpus)
    if config.query:
        records = _stage("ingest", filter_records, records, config.query)
    out = Path(config.out_dir) / config.resolved_search_id()
    out.mkdir(parents=True, exist_ok=True)
    _write(out / "run.json", json.dumps(config.to_json(), sort_keys=True, indent=1))
    return [run_attr(records, attr, config, len(records)) for attr in config.attr_types]
