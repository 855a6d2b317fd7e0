import csv
import io
import json
import subprocess
import sys

import pytest
from hypothesis import given

from conftest import hypergraphs
from hypercurv.cli import main
from hypercurv.generators import gen_complete, gen_hsbm
from hypercurv.hypergraph import build_hypergraph
from hypercurv.io import (
    REPORT_COLUMNS,
    ParseError,
    build_report,
    fmt,
    parse_hyperedges,
    read_hyperedges,
    serialize_hyperedges,
)


def _run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_examples():
    H, tokens = read_hyperedges(["a b c"])
    assert H.edges == ((0, 1, 2),) and tokens == {"a": 0, "b": 1, "c": 2}
    H, _ = read_hyperedges(["a b", "b c # intra"])
    assert H.m == 2 and H.edge_label(0) is None and H.edge_label(1) == "intra"


def test_parse_comments_and_duplicates(caplog):
    H, _ = read_hyperedges(["% header", "x y x", "% more", "y z"])
    assert H.edges == ((0, 1), (1, 2))
    assert "repeated" in caplog.text


def test_parse_empty_line_reports_line_number(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("a b\n\nc d\n")
    with pytest.raises(ParseError, match=":2:"):
        parse_hyperedges(p)
    with pytest.raises(ParseError, match=":1:"):
        read_hyperedges(["# only a label"])


def test_round_trip_complete():
    H = gen_complete(5, 3)
    H2, _ = read_hyperedges(serialize_hyperedges(H).splitlines())
    assert H2.edges == H.edges and H2.n == H.n


@given(hypergraphs())
def test_round_trip_identity(H):
    # id mapping follows first appearance, so compare after one normalizing pass
    once, _ = read_hyperedges(serialize_hyperedges(H).splitlines())
    twice, _ = read_hyperedges(serialize_hyperedges(once).splitlines())
    assert once.edges == twice.edges
    tokens = [sorted(H.node_token(v) for v in e) for e in H.edges]
    assert [sorted(once.node_token(v) for v in e) for e in once.edges] == tokens


def test_labels_survive_round_trip():
    H, _ = gen_hsbm([10, 10], 3, 0.2, 0.01, seed=0)
    H2, _ = read_hyperedges(serialize_hyperedges(H).splitlines())
    assert [H2.edge_label(j) for j in range(H2.m)] == [H.edge_label(j) for j in range(H.m)]


def test_fmt():
    assert fmt(-0.0) == "0"
    assert fmt(0.2) == "0.2"
    assert fmt(1 / 3) == "0.333333333333"


def test_report_shape_and_skips():
    H = build_hypergraph(3, [[0, 1, 2], [2]])
    rep = build_report(H, ["hlrc", "hfrc"])
    assert len(rep.records) == H.m
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    assert tuple(rows[0]) == REPORT_COLUMNS
    assert rows[1] == ["0", "", "1", "2", "", "0"]
    assert rows[2] == ["1", "", "", "", "", "1"]
    doc = json.loads(rep.to_json())
    assert doc["summary"]["hlrc"]["count"] == 1
    with pytest.raises(ValueError):
        build_report(H, ["nope"])


def test_compute_cli(tmp_path, capsys):
    src = tmp_path / "grid.txt"
    assert _run(["gen", "hypergrid", "--k", 3, "--out", src], capsys)[0] == 0
    code, out, _ = _run(["compute", src, "--methods", "hlrc,hfrc,horc"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6
    assert {r["hlrc"] for r in rows} == {"0"}
    code, out, _ = _run(["compute", src, "--format", "json"], capsys)
    assert json.loads(out)["summary"]["hlrc"]["mean"] == 0.0


def test_exit_codes(tmp_path, capsys):
    assert _run(["compute", tmp_path / "missing.txt"], capsys)[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("a b\n\n")
    code, _, err = _run(["compute", bad], capsys)
    assert code == 2 and ":2:" in err
    assert _run(["gen", "hypercycle", "--k", 3], capsys)[0] == 2
    assert _run(["gen", "hypercycle", "--k", 3, "--s", 3, "--m", 4], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["compute", "x", "--methods", "bogus"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_gen_hypercycle_lines(capsys):
    code, out, _ = _run(["gen", "hypercycle", "--k", 4, "--s", 3, "--m", 7], capsys)
    assert code == 0 and len(out.splitlines()) == 7


def test_gen_truth_file(tmp_path, capsys):
    out = tmp_path / "h.txt"
    assert _run(["gen", "hsbm", "--blocks", "15,15", "--k", 3, "--a", 0.1, "--b", 0.001, "--seed", 7, "--out", out], capsys)[0] == 0
    truth = json.loads((tmp_path / "h.txt.truth.json").read_text())
    H, _ = parse_hyperedges(out)
    assert len(truth["edge_intra"]) == H.m
    assert set(truth["node_community"].values()) <= {0, 1}
    assert _run(["gen", "hypertree", "--k", 3, "--r", 2, "--depth", 3, "--out", tmp_path / "t.txt"], capsys)[0] == 0
    assert "edge_roles" in json.loads((tmp_path / "t.txt.truth.json").read_text())


def test_gen_chung_lu_cli(capsys):
    code, out, _ = _run(["gen", "chunglu", "--m", 50, "--n", 40, "--dbar", 3, "--seed", 1], capsys)
    assert code == 0 and len(out.splitlines()) == 50
    code, out, _ = _run(["gen", "chunglu", "--degrees", "2,2", "--sizes", "2,2"], capsys)
    assert out.splitlines() == ["0 1", "0 1"]


def test_wilcoxon_cli(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    a.write_text("1 2 3\n")
    b.write_text("10\n11\n12\n")
    code, out, _ = _run(["stats", "wilcoxon", a, b, "--exact"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["statistic"] == 0.0 and doc["p_value"] == pytest.approx(0.1)
    assert _run(["stats", "wilcoxon", a], capsys)[0] == 2
    h = tmp_path / "h.txt"
    _run(["gen", "hsbm", "--blocks", "15,15", "--k", 3, "--a", 0.1, "--b", 0.001, "--seed", 3, "--out", h], capsys)
    rep = tmp_path / "rep.csv"
    _run(["compute", h, "--out", rep], capsys)
    code, out, _ = _run(["stats", "wilcoxon", "--report", rep, "--groups", "intra,inter"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["n_a"] > 0 and doc["n_b"] > 0


def _write_collection(tmp_path, capsys):
    d = tmp_path / "coll"
    d.mkdir()
    labels = ["name,label"]
    for n in (5, 6, 7):
        _run(["gen", "complete", "--n", n, "--k", 3, "--out", d / f"complete{n}.txt"], capsys)
        labels.append(f"complete{n},complete")
    for k in (3, 4, 5):
        _run(["gen", "hypergrid", "--k", k, "--out", d / f"grid{k}.txt"], capsys)
        labels.append(f"grid{k},grid")
    lab = tmp_path / "labels.csv"
    lab.write_text("\n".join(labels) + "\n")
    return d, lab


def test_cluster_cli(tmp_path, capsys):
    d, lab = _write_collection(tmp_path, capsys)
    prefix = tmp_path / "run"
    code, _, _ = _run(["cluster", d, "--k", 2, "--labels", lab, "--out-prefix", prefix], capsys)
    assert code == 0
    emb = list(csv.DictReader(open(f"{prefix}_embedding.csv")))
    assert [r["name"] for r in emb] == sorted(r["name"] for r in emb)
    assert set(emb[0]) == {"name", "x", "y", "cluster"}
    assert json.loads(open(f"{prefix}_scores.json").read())["ari"] == 1.0
    header = open(f"{prefix}_histograms.csv").readline().strip().split(",")
    assert len(header) == 41
    _run(["cluster", d, "--k", 2, "--method", "horc", "--out-prefix", tmp_path / "o"], capsys)
    assert len(open(tmp_path / "o_histograms.csv").readline().strip().split(",")) == 61
    manifest = tmp_path / "list.manifest"
    manifest.write_text("coll/complete5.txt\ncoll/grid3.txt\n")
    assert _run(["cluster", manifest, "--k", 2, "--out-prefix", tmp_path / "m"], capsys)[0] == 0
    missing = tmp_path / "partial.csv"
    missing.write_text("complete5,complete\n")
    assert _run(["cluster", d, "--labels", missing, "--out-prefix", tmp_path / "x"], capsys)[0] == 2


def test_bench_cli(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    code, _, _ = _run(["bench", "--vary", "m", "--values", "50,100", "--methods", "hlrc,hfrc", "--n", 40, "--out", out], capsys)
    assert code == 0
    rows = list(csv.DictReader(open(out)))
    assert len(rows) == 4
    assert all(r["status"] == "ok" and float(r["ms"]) >= 0 for r in rows)


def _snapshot(paths):
    return {p.name: p.read_bytes() for p in paths}


def test_cli_byte_determinism(tmp_path, capsys):
    outs = []
    for rep in range(2):
        base = tmp_path / f"r{rep}"
        base.mkdir()
        h = base / "h.txt"
        _run(["gen", "hsbm", "--blocks", "15,15", "--k", 3, "--a", 0.1, "--b", 0.001, "--seed", 5, "--out", h], capsys)
        _run(["gen", "chunglu", "--m", 80, "--n", 40, "--dbar", 3, "--seed", 5, "--out", base / "c.txt"], capsys)
        _run(["compute", h, "--methods", "hlrc,hfrc,horc", "--out", base / "cur.csv"], capsys)
        _run(["stats", "wilcoxon", "--report", base / "cur.csv", "--groups", "intra,inter", "--out", base / "w.json"], capsys)
        outs.append(_snapshot(sorted(base.iterdir())))
    assert outs[0] == outs[1]


def test_threads_identical_csv(tmp_path, capsys):
    h = tmp_path / "h.txt"
    _run(["gen", "chunglu", "--m", 300, "--n", 150, "--dbar", 4, "--seed", 2, "--out", h], capsys)
    _run(["compute", h, "--methods", "hlrc,hfrc,horc", "--threads", 1, "--out", tmp_path / "t1.csv"], capsys)
    _run(["compute", h, "--methods", "hlrc,hfrc,horc", "--threads", 4, "--out", tmp_path / "t4.csv"], capsys)
    assert (tmp_path / "t1.csv").read_bytes() == (tmp_path / "t4.csv").read_bytes()


def test_threads_env_default(tmp_path, capsys, monkeypatch):
    h = tmp_path / "h.txt"
    _run(["gen", "complete", "--n", 6, "--k", 3, "--out", h], capsys)
    monkeypatch.setenv("HYPERCURV_THREADS", "3")
    code, out, _ = _run(["compute", h], capsys)
    assert code == 0 and len(out.splitlines()) == 21


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "hypercurv.cli", "gen", "complete", "--n", "4", "--k", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["0 1 2", "0 1 3", "0 2 3", "1 2 3"]
