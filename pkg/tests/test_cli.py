import json

import pytest

from k4verma.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_axioms_small_bounds_pass(capsys):
    code, rep = run(capsys, "axioms", "--max-tpow", "1", "--max-dpow", "0")
    assert code == 0 and rep["ok"]
    assert [c["name"] for c in rep["checks"]] == [
        "conformal-axioms", "derived-subalgebra-closure",
        "annihilation-jacobi", "cocycle-conditions", "quotient-morphism",
        "kernel-is-central", "cocycle-from-splitting"]


def test_corrupted_cocycle_is_detected(capsys):
    code, rep = run(capsys, "axioms", "--max-tpow", "0", "--max-dpow", "0",
                    "--corrupt-cocycle")
    assert code == 1 and not rep["ok"]
    failed = {c["name"] for c in rep["checks"] if not c["ok"]}
    assert failed == {"annihilation-jacobi", "cocycle-conditions"}
    jac = next(c for c in rep["checks"] if c["name"] == "annihilation-jacobi")
    assert jac["counterexamples"]


def test_search_reports_the_kernel(capsys):
    code, rep = run(capsys, "search", "--weight", "0,1,5/2,1/2",
                    "--degree", "3", "--dual-path")
    assert code == 0
    solver = rep["checks"][0]
    assert solver["kernel_dim"] == 1 and solver["labels"] == ["3b"]
    assert rep["checks"][1] == {"name": "dual-path-agrees", "ok": True}
    term = rep["kernel"][0][0]
    assert set(term) == {"theta", "eta", "monomial", "coeff"}
    assert set(term["coeff"]) == {"re", "im"}


def test_search_off_list_weight_is_empty(capsys):
    code, rep = run(capsys, "search", "--weight", "0,0,2,0", "--degree", "2")
    assert code == 0
    assert rep["checks"][0]["kernel_dim"] == 0
    assert rep["kernel"] == []


def test_bad_weight_string_is_rejected():
    with pytest.raises(SystemExit):
        main(["search", "--weight", "0,0,2", "--degree", "1"])


def test_verify_theorems_sweep(capsys):
    code, rep = run(capsys, "verify-theorems", "--max-mn", "1",
                    "--negatives", "2", "--seed", "7")
    assert code == 0 and rep["ok"] and rep["seed"] == 7
    names = [c["name"] for c in rep["checks"]]
    assert sum(1 for s in names if s.startswith("off-list")) == 2
    covered = {i for c in rep["checks"] for i in c.get("instances", [])}
    assert "1a(0,0)" in covered and "3a(1,0)" in covered


def test_complexes_writes_graph_files(capsys, tmp_path):
    out = tmp_path / "g.json"
    code, rep = run(capsys, "complexes", "--max-mn", "1", "--out", str(out))
    assert code == 0 and rep["ok"]
    graph = json.loads(out.read_text())
    assert graph["max_mn"] == 1 and graph["duality_involution_ok"]
    assert (tmp_path / "g.dot").read_text().startswith("digraph")


def test_coadjoint_dimension_prefix(capsys):
    code, rep = run(capsys, "coadjoint", "--max-degree", "3")
    assert code == 0
    dims = rep["checks"][0]["dims"]
    assert dims == [1, 4, 7, 8]
