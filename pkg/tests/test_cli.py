import json

import pytest

from mmspace.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_count(capsys):
    assert run(capsys, "enumerate", "--n", "4", "--count")[:2] == (0, "29\n")


def test_check_out_is_infeasible(capsys, tmp_path):
    path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "check", "--mode", "out", "--out", str(path))
    assert code == 1 and out.startswith("INFEASIBLE") and str(path) in out
    doc = json.loads(path.read_text())
    assert doc["combination"]["rhs"].startswith("-")
    assert run(capsys, "certificate", "--verify", str(path))[:2] == (0, "VALID\n")


def test_check_default_certificate_path(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(capsys, "check", "--mode", "out")
    assert code == 1 and (tmp_path / "certificate-out.json").exists()


def test_negative_control_is_feasible(capsys):
    code, out, _ = run(capsys, "check", "--mode", "out", "--drop-star")
    assert code == 0 and "gamma_S = 1/4" in out and "beta_L = 1/2" in out


def test_link_dot(capsys):
    code, out, _ = run(capsys, "link", "--tree", "S1", "--format", "dot")
    assert code == 0 and out.count("class=") == 10


def test_link_accepts_tree_json(capsys):
    tree = json.dumps({"rank": 4, "edges": [[1, 3], [1, 2, 4]]})
    code, out, _ = run(capsys, "link", "--tree", tree)
    assert code == 0 and out.startswith("5 vertices, 6 edges")


def test_inequalities_json_round_trips(capsys, tmp_path):
    from mmspace.curvature import AngleSystem, build_system

    code, out, _ = run(capsys, "inequalities", "--mode", "out", "--format", "json")
    assert code == 0
    assert AngleSystem.from_json(json.loads(out)) == build_system("out")


def test_output_is_deterministic(capsys):
    first = run(capsys, "link", "--tree", "Theta0", "--format", "json")
    second = run(capsys, "link", "--tree", "Theta0", "--format", "json")
    assert first == second


@pytest.mark.parametrize("argv", [["bogus"], ["link", "--tree", "Q9"], ["enumerate", "--n", "9"],
                                  ["carries", "--tree", "S1", "--pc", "nonsense"], ["link"]])
def test_input_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_small_verbs(capsys):
    assert "nuclear\t1" in run(capsys, "classify")[1]
    assert run(capsys, "carrier", "--pc", "x[1,{3}]", "--pc", "x[2,{4}]")[1] == "L13_24\n"
    assert "False" in run(capsys, "carries", "--tree", "S1", "--pc", "x[2,{4}]")[1]
    assert len(run(capsys, "carried-group", "--tree", "S1")[1].splitlines()) == 4
    assert "longest chain: 3 elements" in run(capsys, "poset")[1]
    assert run(capsys, "oracle-verify", "--n", "4")[0] == 0
    assert "equals Out-mode system: True" in run(capsys, "symmetrize")[1]
    assert run(capsys, "embed", "--n", "5")[0] == 0


def test_fixed_points(capsys):
    code, out, _ = run(capsys, "fixed-points", "--n", "5")
    assert code == 0 and "equals tilde image: True" in out
