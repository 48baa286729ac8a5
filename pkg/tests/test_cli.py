import csv
import io
import json
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from adlv.affine import affine_group
from adlv.cli import main
from adlv.oracles import bfs_word_lengths
from adlv.parse import parse_element
from adlv.predict import RECORD_COLUMNS, BasicClassData, predict

SEC5 = "t[-4,2,4] s2 s1 s3 s2"


def run(*argv):
    """Run the CLI in-process; return (exit code, stdout)."""
    out = io.StringIO()
    try:
        code = main(list(argv), out)
    except SystemExit as e:
        code = e.code
    return code, out.getvalue()


def tsv_rows(text):
    return list(csv.DictReader(io.StringIO(text), delimiter="\t"))


def test_eval_examples():
    code, out = run("A2", "eval", "s0", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["length"] == 1
    assert d["decomposition"] == {"v": "e", "mu": [1, 1], "w": "s1 s2 s1"}
    code, out = run("A2", "eval", "e", "--format", "json")
    assert json.loads(out)["length"] == 0
    d = json.loads(run("A3", "eval", SEC5, "--format", "json")[1])
    assert d["eta"] == "s1 s2 s1 s3 s2 s1"
    G = affine_group("A3")
    assert G.W.parse(d["eta"]) == G.W.parse("s1 s2 s3 s2 s1 s2")


def test_eval_round_trip():
    G = affine_group("A2")
    b = BasicClassData.trivial(G.rs)
    for x in G.enumerate(5):
        d = json.loads(run("eval", G.word_str(x), "--format", "json")[1])
        y = parse_element(G, d["element"])
        assert y == x and parse_element(G, d["word"]) == x
        assert d["length"] == y.length
        dec = G.canonical_decomposition(y)
        assert (d["decomposition"]["v"], tuple(d["decomposition"]["mu"]), d["decomposition"]["w"]) == (
            str(dec.v), dec.mu, str(dec.w))
        if d["d"] is not None:
            assert Fraction(d["d"]) * 2 == d["dim_times_2"] == 2 * G.virtual_dim(y, b)


def test_eval_text_format():
    code, out = run("eval", "s0")
    assert code == 0 and "length: 1" in out and "canonical: (e) t[1,1] (s1 s2 s1)" in out


def test_predict_exit_codes(capsys):
    code, out = run("A3", "predict", SEC5)
    rec = json.loads(out)
    assert code == 0 and rec["status"] == "Nonempty"
    assert set(rec["flags"]) == {"upper-bound-proven", "lower-bound-proven", "exact"}
    assert list(rec) == list(RECORD_COLUMNS)
    assert run("predict", "t[1,1]")[0] == 1
    assert run("predict", "e")[0] == 2
    capsys.readouterr()
    code, out = run("predict", "pi")
    err = capsys.readouterr().err
    assert code == 1 and "same connected component" in err
    code, out = run("predict", "pi", "--b", "pgl:3:1")
    assert code == 0 and json.loads(out)["defect"] == 2


def test_usage_errors(capsys):
    assert run("bogus")[0] == 64
    assert run("eval", "s5")[0] == 64
    assert "position 0" in capsys.readouterr().err
    assert run("--type", "E6", "eval", "e")[0] == 64
    assert run("predict", "e", "--b", "pgl:5:1")[0] == 64
    assert run("sweep", "-1")[0] == 64
    assert run("verify", "nonsense")[0] == 64
    assert run()[0] == 64


def test_global_flags_anywhere():
    a = run("--type", "B2", "--format", "json", "eval", "s0")[1]
    b = run("eval", "s0", "--type", "B2", "--format", "json")[1]
    c = run("B2", "eval", "s0", "--format", "json")[1]
    assert a == b == c and json.loads(a)["type"] == "B2"


def test_sweep_zero():
    rows = tsv_rows(run("sweep", "0", "--all-components")[1])
    assert [r["element"] for r in rows] == ["e", "t[1,0] s1 s2", "t[0,1] s2 s1"]
    rows = tsv_rows(run("sweep", "0")[1])
    assert [r["element"] for r in rows] == ["e"]


def test_sweep_counts_match_oracle():
    G = affine_group("A2")
    rows = tsv_rows(run("sweep", "4")[1])
    assert len(rows) == len(bfs_word_lengths(G, 4))
    rows = tsv_rows(run("sweep", "4", "--all-components")[1])
    assert len(rows) == 3 * len(bfs_word_lengths(G, 4))


def test_sweep_tsv_and_json_round_trip():
    G = affine_group("A2")
    text = run("sweep", "6")[1]
    assert text.splitlines()[0].split("\t") == list(RECORD_COLUMNS)
    rows = tsv_rows(text)
    js = json.loads(run("sweep", "6", "--format", "json")[1])
    assert len(js) == len(rows)
    lengths = []
    for r, j in zip(rows, js):
        assert r["element"] == j["element"]
        x = parse_element(G, r["element"])
        lengths.append(x.length)
        p = predict(x)
        assert r["status"] == j["status"] == p.status
        assert r["eta"] == str(G.eta(x)) and int(r["eta_length"]) == G.eta(x).length
        assert r["shrunken"] == ("true" if G.is_shrunken(x) else "false")
        dim = None if p.dim is None else int(2 * p.dim)
        assert j["dim_times_2"] == dim and r["dim_times_2"] == ("" if dim is None else str(dim))
        assert sorted(j["flags"]) == sorted(p.flags)
    assert lengths == sorted(lengths)


def test_sweep_deterministic_across_jobs():
    one = run("sweep", "7")[1]
    assert one == run("sweep", "7")[1]
    assert one == run("--jobs", "4", "sweep", "7")[1]


def test_tree_formats():
    code, out = run("tree", "s1 s2")
    assert code == 0 and out.startswith("digraph") and "->" not in out
    code, out = run("A3", "tree", SEC5)
    assert code == 0
    assert "closed(s1)" in out and "open(s1)" in out
    js = run("A3", "tree", SEC5, "--format", "json")[1]
    d = json.loads(js)
    assert d["element"] == SEC5 and d["length"] == 18
    assert [c["move"] for c in d["children"]][:2] == ["closed(s1)", "open(s1)"]
    text = run("A3", "tree", SEC5, "--format", "text")[1]
    assert text.splitlines()[0].startswith(SEC5)
    assert run("A3", "--budget", "3", "tree", SEC5)[0] == 3


def test_tree_json_round_trip():
    from adlv.reduction import build_reduction_tree, tree_from_json
    G = affine_group("A3")
    js = run("A3", "tree", SEC5, "--format", "json")[1]
    t = tree_from_json(G, js)
    assert t.to_json() + "\n" == js
    assert t.to_json() == build_reduction_tree(parse_element(G, SEC5)).to_json()


def test_star_and_reachable():
    assert run("star", "s1 s2", "s2 s1")[1].strip() == "s1 s2 s1"
    d = json.loads(run("star", "s0", "s0", "--format", "json")[1])
    assert d["word"] == "s0" and d["length"] == 1
    code, out = run("reachable", "t[1,1] s1 s2", "--target", "s1 s2")
    assert code == 0 and out.splitlines()[0] == "t[1,1] s1 s2"
    d = json.loads(run("reachable", "s1 s2", "--format", "json")[1])
    assert not d["partial"] and {e["element"] for e in d["elements"]} >= {"s1 s2", "s2 s1"}
    code, out = run("reachable", "s1", "--target", "s2 s1")
    assert code == 3 and "not reachable" in out


def test_verify_commands():
    code, out = run("verify", "lengths", "A2", "8")
    assert code == 0 and out.startswith("PASS lengths A2")
    code, out = run("verify", "non-equidim", "A3")
    assert code == 0 and "v = s1 s2, w = s1 s2 s3 s2, s = s1" in out
    t0 = time.perf_counter()
    code, out = run("verify", "all", "A1", "6")
    assert code == 0 and time.perf_counter() - t0 < 1.0
    assert out.count("PASS") == 8
    d = json.loads(run("verify", "lengths", "A1", "--format", "json")[1])
    assert d[0]["ok"] and d[0]["suite"] == "lengths"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "adlv", "A2", "predict", "t[1,1]"], capture_output=True, text=True)
    assert r.returncode == 1 and json.loads(r.stdout)["status"] == "Empty"
