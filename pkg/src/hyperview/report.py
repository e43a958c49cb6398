"""Comparison records, text tables, and aggregation across searches."""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

log = logging.getLogger(__name__)


@dataclass
class ProtocolResult:
    """Metrics for one layout protocol: layout computed on one view, carried to the other."""

    layout_on: str
    clarity_clique: Optional[float]
    clarity_extra: Optional[float]
    clarity_gain: Optional[float]
    entropy_clique: Optional[float]
    entropy_extra: Optional[float]
    images: dict = field(default_factory=dict)


@dataclass
class ViewReport:
    search_id: str
    attr_type: str
    query: Optional[str]
    seed: int
    records: int
    collaborations: int
    hyperedges: int
    average_size: Optional[float]
    clique_nodes: int
    clique_edges: int
    extra_nodes: int
    extra_edges: int
    edge_gain: Optional[float]
    protocols: list = field(default_factory=list)

    def protocol(self, layout_on: str) -> Optional[ProtocolResult]:
        for p in self.protocols:
            if p.layout_on == layout_on:
                return p
        return None

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, obj: dict) -> "ViewReport":
        obj = dict(obj)
        obj["protocols"] = [ProtocolResult(**p) for p in obj.get("protocols", [])]
        return cls(**obj)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, sort_keys=True, indent=1)

    @classmethod
    def loads(cls, text: str) -> "ViewReport":
        return cls.from_json(json.loads(text))


def _fmt(v, digits=2):
    if v is None:
        return "x"
    if isinstance(v, float):
        return f"{v:.{digits}f}"
    return f"{v:,}" if isinstance(v, int) else str(v)


def format_table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    """Left-align the first column and right-align the rest."""
    cells = [list(map(str, header))] + [[_fmt(c) if not isinstance(c, str) else c for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = []
    for n, r in enumerate(cells):
        parts = [r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])]
        lines.append("  ".join(parts).rstrip())
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def report_text(r: ViewReport) -> str:
    head = f"search: {r.search_id}  attr: {r.attr_type}  seed: {r.seed}\n"
    if r.query:
        head += f"query: {r.query}\n"
    rows = [
        ("Number of collaborations", r.collaborations, ""),
        ("Average size of collaborations", r.average_size, ""),
        ("Number of nodes", r.clique_nodes, r.extra_nodes),
        ("Number of edges", r.clique_edges, r.extra_edges),
        ("Gain in edges", r.edge_gain, ""),
    ]
    out = head + "\n" + format_table(("", "Clique view", "extra-node view"), rows)
    if r.protocols:
        prow = []
        for p in r.protocols:
            prow.append((f"layout on {p.layout_on}", p.clarity_clique, p.clarity_extra,
                         p.clarity_gain, p.entropy_clique, p.entropy_extra))
        out += "\n" + format_table(
            ("", "C clique", "C extra-node", "G_C", "H clique", "H extra-node"),
            [tuple(_fmt(v, 4) if isinstance(v, float) else v for v in row) for row in prow],
        )
    return out


# -- aggregation -------------------------------------------------------------------


@dataclass(frozen=True)
class Summary:
    n: int
    mean: float
    std: float
    q1: float
    q2: float
    q3: float


def describe(values: Sequence[float]) -> Optional[Summary]:
    """Mean, population standard deviation and linearly interpolated quartiles."""
    vals = np.sort(np.asarray([v for v in values if v is not None], dtype=float))
    if len(vals) == 0:
        return None
    q1, q2, q3 = np.percentile(vals, [25, 50, 75], method="linear")
    return Summary(len(vals), float(vals.mean()), float(vals.std()), float(q1), float(q2), float(q3))


def _metric_columns(r: ViewReport) -> dict:
    cols = {"edge_gain": r.edge_gain}
    for p in r.protocols:
        tag = f"on_{p.layout_on}"
        cols[f"clarity_clique_{tag}"] = p.clarity_clique
        cols[f"clarity_extra_{tag}"] = p.clarity_extra
        cols[f"clarity_gain_{tag}"] = p.clarity_gain
        cols[f"entropy_clique_{tag}"] = p.entropy_clique
        cols[f"entropy_extra_{tag}"] = p.entropy_extra
    return cols


def aggregate_reports(reports: Sequence[ViewReport]) -> dict:
    """Summaries per metric plus the share of searches whose edge gain is below 1.

    The clarity-gain summary averages per-search ratios; it is not the ratio
    of the average clarities.
    """
    if not reports:
        raise ValueError("need at least one report")
    columns: dict[str, list] = {}
    for r in reports:
        for k, v in _metric_columns(r).items():
            columns.setdefault(k, []).append(v)
    out = {k: describe(v) for k, v in sorted(columns.items())}
    gains = [r.edge_gain for r in reports if r.edge_gain is not None]
    out["percent_edge_gain_below_1"] = (
        100.0 * sum(g < 1 for g in gains) / len(gains) if gains else None
    )
    return out


def aggregate_csv(summary: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["metric", "n", "mean", "std", "q1", "q2", "q3"])
    for k, s in summary.items():
        if isinstance(s, Summary):
            w.writerow([k, s.n, repr(s.mean), repr(s.std), repr(s.q1), repr(s.q2), repr(s.q3)])
    pct = summary.get("percent_edge_gain_below_1")
    w.writerow(["percent_edge_gain_below_1", "", "" if pct is None else repr(pct), "", "", "", ""])
    return buf.getvalue()


def emit_gain_scatter(reports: Sequence[ViewReport]) -> str:
    """CSV of (search, attr, average hyperedge size, edge gain), one row per report."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["search_id", "attr_type", "average_size", "edge_gain"])
    for r in reports:
        if r.edge_gain is None or r.average_size is None:
            log.warning("skipping %s/%s: extra-node view has no edges", r.search_id, r.attr_type)
            continue
        w.writerow([r.search_id, r.attr_type, repr(r.average_size), repr(r.edge_gain)])
    return buf.getvalue()


def stats_tables(h, fit_range=None) -> dict:
    """Histogram, power-law fit and potential-gain table for one hypergraph, as CSV and text."""
    from .analysis import REPORT_BINS, fit_power_law, potential_gain_table, size_histogram

    hist = size_histogram(h)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["size", "count"])
    for k in hist.sizes():
        w.writerow([k, hist[k]])
    hist_csv = buf.getvalue()

    try:
        fit = fit_power_law(hist, fit_range)
        fit_txt = (f"N ~ 10^{fit.intercept:.3f} * |C|^{fit.exponent:.3f}  "
                   f"r2={fit.r_squared:.4f}  range={fit.fit_range[0]}..{fit.fit_range[1]}\n")
        fit_obj = asdict(fit)
    except ValueError as exc:
        fit_txt = f"no power-law fit: {exc}\n"
        fit_obj = None

    rows, total = potential_gain_table(hist, REPORT_BINS)
    header = ("|E|", "collaborations", "clique edges", "extra-node edges", "G_edge")
    body = [(r.label, r.count, r.clique_edges, r.extra_node_edges, r.gain) for r in rows]
    body.append(("Sum", total.count, total.clique_edges, total.extra_node_edges, total.gain))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in body:
        w.writerow(["" if v is None else v for v in row])
    return {
        "histogram_csv": hist_csv,
        "gain_csv": buf.getvalue(),
        "gain_text": format_table(header, body),
        "fit_text": fit_txt,
        "fit": fit_obj,
    }

