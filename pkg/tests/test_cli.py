import json

import numpy as np
import pytest

from conftest import FIXTURES
from hyperview.cli import build_parser, main
from hyperview.expand import ExpandedGraph, clique_expansion, extra_node_expansion
from hyperview.hypergraph import Hypergraph, build_hypergraph
from hyperview.ingest import extract_attribute_sets, read_corpus
from hyperview.layout import LayoutParams, LayoutState, force_atlas2, louvain
from hyperview.render import RasterImage
from hyperview.report import ViewReport

CORPUS = str(FIXTURES / "sample_corpus.jsonl")
SMALL = ["--width", "120", "--height", "100"]


def test_stages_chain(tmp_path, capsys):
    t = tmp_path
    assert main(["ingest", "--corpus", CORPUS, "--query", "bgo OR bismuth", "--out", str(t / "r.jsonl")]) == 0
    assert [r.id for r in read_corpus(t / "r.jsonl")] == ["a1", "a2", "a3"]

    assert main(["build", "--records", str(t / "r.jsonl"), "--attr", "organisation", "--out", str(t / "h.json")]) == 0
    h = Hypergraph.loads((t / "h.json").read_text())
    assert h == build_hypergraph(extract_attribute_sets(read_corpus(t / "r.jsonl"), "organisation"), "organisation")

    for view in ("clique", "extra"):
        assert main(["expand", "--hypergraph", str(t / "h.json"), "--view", view, "--out", str(t / f"{view}.json")]) == 0
    c = ExpandedGraph.loads((t / "clique.json").read_text())
    e = ExpandedGraph.loads((t / "extra.json").read_text())
    assert c == clique_expansion(h) and e == extra_node_expansion(h)

    assert main(["layout", "--graph", str(t / "clique.json"), "--out", str(t / "lc.json"),
                 "--iterations", "30", "--seed", "2"]) == 0
    lay = LayoutState.loads((t / "lc.json").read_text())
    ref = force_atlas2(c, LayoutParams(iterations=30, seed=2), None, louvain(c, 2)[0])
    assert np.array_equal(lay.positions, ref.positions) and lay.seed == 2

    assert main(["transfer", "--layout", str(t / "lc.json"), "--from-graph", str(t / "clique.json"),
                 "--to-graph", str(t / "extra.json"), "--out", str(t / "le.json")]) == 0
    moved = LayoutState.loads((t / "le.json").read_text())
    assert moved.transferred and len(moved) == e.n_nodes

    capsys.readouterr()
    assert main(["render", "--graph", str(t / "extra.json"), "--layout", str(t / "le.json"),
                 "--out", str(t / "img.ppm"), *SMALL]) == 0
    metrics = json.loads(capsys.readouterr().out)
    img = RasterImage.from_ppm((t / "img.ppm").read_bytes())
    assert img.pixels.shape == (100, 120, 3)
    assert 0 < metrics["clarity"] < 1 and 0 < metrics["entropy"] < 1


def test_all_and_aggregate(tmp_path):
    out = tmp_path / "out"
    assert main(["all", "--corpus", CORPUS, "--attr", "organisation,keyword", "--out", str(out),
                 "--search-id", "demo", "--iterations", "20", *SMALL]) == 0
    reports = sorted((out / "demo").rglob("report.json"))
    assert len(reports) == 2
    assert (out / "demo" / "gain_scatter.csv").read_text().startswith("search_id,attr_type")
    assert main(["report", "aggregate", *map(str, reports), "--out", str(tmp_path / "agg")]) == 0
    assert (tmp_path / "agg" / "aggregate.csv").read_text().startswith("metric,n,mean")
    rep = ViewReport.loads(reports[1].read_text())
    assert rep.attr_type == "organisation" and rep.collaborations == 4


def test_all_single_protocol(tmp_path):
    out = tmp_path / "o"
    assert main(["all", "--corpus", CORPUS, "--out", str(out), "--search-id", "s", "--layout-on", "clique",
                 "--transfer-to", "extra", "--iterations", "10", *SMALL]) == 0
    rep = ViewReport.loads((out / "s" / "organisation" / "report.json").read_text())
    assert [p.layout_on for p in rep.protocols] == ["clique"]
    assert main(["all", "--corpus", CORPUS, "--out", str(out), "--layout-on", "clique",
                 "--transfer-to", "clique"]) == 1
    assert main(["all", "--corpus", CORPUS, "--out", str(out), "--search-id", "n", "--layout-on", "extra",
                 "--transfer-to", "none", "--iterations", "10", *SMALL]) == 0
    assert len(list((out / "n").rglob("*.ppm"))) == 1


def test_report_stats(tmp_path, capsys):
    h = build_hypergraph([(f"p{i}", {f"n{j}" for j in range(i % 5 + 1)}) for i in range(40)])
    (tmp_path / "h.json").write_text(h.dumps())
    assert main(["report", "stats", "--hypergraph", str(tmp_path / "h.json"), "--out", str(tmp_path / "s")]) == 0
    assert "Sum" in capsys.readouterr().out
    assert (tmp_path / "s" / "gain_table.csv").exists()
    fit = json.loads((tmp_path / "s" / "fit.json").read_text())
    # every size occurs 8 times: a flat power law
    assert fit["exponent"] == 0.0 and fit["intercept"] == pytest.approx(np.log10(8))


def test_synth_matches_bundled(tmp_path):
    assert main(["synth", "--out", str(tmp_path / "c.jsonl")]) == 0
    from hyperview.synthetic import bundled_corpus_path

    assert (tmp_path / "c.jsonl").read_bytes() == bundled_corpus_path().read_bytes()


def test_errors_return_nonzero(tmp_path, caplog):
    assert main(["build", "--records", str(tmp_path / "nope"), "--attr", "x", "--out", str(tmp_path / "h")]) == 1
    assert main(["ingest", "--corpus", CORPUS, "--query", "(", "--out", str(tmp_path / "x")]) == 1
    assert "ERROR" in caplog.text or caplog.records


def test_palette_flag():
    args = build_parser().parse_args(["render", "--graph", "g", "--layout", "l", "--out", "o",
                                      "--palette", "ff0000,#00ff00"])
    assert args.palette == ((255, 0, 0), (0, 255, 0))
    with pytest.raises(SystemExit):
        build_parser().parse_args(["render", "--graph", "g", "--layout", "l", "--out", "o", "--palette", "red"])
