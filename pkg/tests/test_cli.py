import json
from pathlib import Path

import pytest

from boolconn import exports
from boolconn.cli import EXIT_CAP, EXIT_INPUT, EXIT_NO, EXIT_OK, EXIT_USAGE, run
from boolconn.relation import relation

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def call(capsys, *args):
    code = run([*args, "--quiet"])
    out = capsys.readouterr()
    return code, out.out, out.err


def corpus(name):
    return str(CORPUS / name)


def test_classify_reports_verdicts(capsys):
    code, out, _ = call(capsys, "classify", corpus("or.rel"))
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["result"]["verdicts"]["conn"] == "InP"
    assert payload["command"][0] == "classify"
    assert list(payload["inputs"]) == [corpus("or.rel")]


def test_conn_exit_codes(capsys):
    code, out, _ = call(capsys, "conn", corpus("cycle.cnfs"))
    assert code == EXIT_NO
    assert json.loads(out)["result"]["verdict"] == "disconnected"
    code, _, _ = call(capsys, "conn", corpus("or_chain.cnfs"))
    assert code == EXIT_OK


def test_conn_with_pinned_method(capsys):
    code, out, _ = call(capsys, "conn", corpus("affine.cnfs"), "--method", "affine")
    assert code in (EXIT_OK, EXIT_NO)
    assert json.loads(out)["method"] == "affine"
    code, _, err = call(capsys, "conn", corpus("nae_ring.cnfs"), "--method", "affine")
    assert code == EXIT_INPUT and "inapplicable" in err


def test_stconn_and_validation(capsys):
    code, out, _ = call(capsys, "stconn", corpus("cycle.cnfs"), "--s", "000", "--t", "111")
    assert code == EXIT_NO
    code, _, err = call(capsys, "stconn", corpus("cycle.cnfs"), "--s", "00", "--t", "111")
    assert code == EXIT_INPUT and "--s" in err


def test_components_and_diameter(capsys):
    code, out, _ = call(capsys, "components", corpus("cycle.cnfs"))
    r = json.loads(out)["result"]
    assert (code, r["count"], r["minima"], r["sizes"]) == (EXIT_OK, 2, ["000", "111"], [1, 1])
    code, out, _ = call(capsys, "diameter", corpus("or_chain.cnfs"))
    assert json.loads(out)["result"]["diameter"] >= 1


def test_clone_and_bf_conn(capsys):
    code, out, _ = call(capsys, "clone", corpus("imp.fn"))
    r = json.loads(out)["result"]
    assert (r["clone"], r["verdict_bf"], r["verdict_qbf"]) == ("S0", "easy", "hard")
    code, out, _ = call(capsys, "bf-conn", corpus("linear.fn"), "--formula-file", corpus("linear.bf"))
    assert code == EXIT_NO
    code, out, _ = call(capsys, "bf-conn", corpus("imp.fn"), "--formula", "(IMP x1 x2)", "--s", "00", "--t", "11")
    assert code == EXIT_OK


def test_witness_diameter_writes_files(capsys, tmp_path):
    code, out, _ = call(capsys, "witness-diameter", "--n", "6", "--out-dir", str(tmp_path))
    assert code == EXIT_OK
    r = json.loads(out)["result"]
    assert r["provenance"]["verified"]["diameter"] == 14
    assert sorted(p.name for p in tmp_path.iterdir()) == r["written"]
    code, out, _ = call(capsys, "conn", str(tmp_path / "diameter_6.cnfs"))
    assert code == EXIT_OK


def test_reduce_modes(capsys, tmp_path):
    code, out, _ = call(capsys, "reduce", corpus("psi_gr.cnfs"), "--mode", "conn-hardness",
                        "--out-dir", str(tmp_path))
    assert code == EXIT_OK
    assert json.loads(out)["result"]["provenance"]["input_satisfiable"] is True
    code, out, _ = call(capsys, "reduce", corpus("nae_const.cnfs"), "--mode", "drop-constants")
    assert code == EXIT_OK
    assert "constants=false" in json.loads(out)["result"]["formula"]


def test_export_formats(capsys, tmp_path):
    code, out, _ = call(capsys, "export", corpus("cycle.cnfs"), "--format", "dot")
    assert code == EXIT_OK and out.startswith("graph solutions {")
    code, out, _ = call(capsys, "export", corpus("or.rel"), "--format", "svg")
    assert out.startswith("<svg")
    target = tmp_path / "g.json"
    code, out, _ = call(capsys, "export", corpus("cycle.cnfs"), "--out", str(target))
    assert json.loads(target.read_text())["components"] == 2
    code, out, _ = call(capsys, "export", corpus("ihsb_exists.cnfs"), "--horn")
    assert code == EXIT_OK and out.startswith("digraph")


def test_usage_input_and_cap_errors(capsys, tmp_path):
    assert call(capsys, "frobnicate")[0] == EXIT_USAGE
    assert call(capsys, "conn", str(tmp_path / "missing.cnfs"))[0] == EXIT_INPUT
    bad = tmp_path / "bad.rel"
    bad.write_text("relation R arity=2\n0\n")
    code, _, err = call(capsys, "classify", str(bad))
    assert code == EXIT_INPUT and "bad.rel" in err
    code, _, err = call(capsys, "witness-diameter", "--n", "8", "--cap-enumeration", "4")
    assert code == EXIT_CAP


def test_logging_goes_to_stderr(capsys):
    code = run(["conn", corpus("or_chain.cnfs")])
    out = capsys.readouterr()
    assert code == EXIT_OK
    assert "wall time" in out.err and "wall time" not in out.out


def test_export_payloads_are_deterministic():
    rel = relation("000", "001", "011", "111", "110")
    assert exports.to_json(rel) == exports.to_json(relation(*reversed(rel.to_strings())))
    payload = json.loads(exports.to_json(rel))
    assert payload["components"] == 1
    assert len(payload["edges"]) == 4
    dot = exports.to_dot(rel)
    assert dot.count(" -- ") == 4
    svg = exports.to_svg(rel)
    assert svg.count("<circle") == 5 and svg.count("<line") == 4
