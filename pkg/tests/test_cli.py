import json

import pytest

from cubesense.cli import main
from cubesense.formats import parse_vertex_set
from cubesense.hypercube import is_irreducible, min_degree


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_measure_catalog_json(capsys):
    code, out, _ = run(capsys, "measure", "--fn", "or:3", "--format", "json")
    assert code == 0
    rec = json.loads(out)
    assert (rec["s"], rec["s0"], rec["s1"]) == (3, 3, 1)


def test_measure_table_and_json_agree(capsys):
    _, table, _ = run(capsys, "measure", "--fn", "parity:3")
    _, js, _ = run(capsys, "measure", "--fn", "parity:3", "--format", "json")
    rec = json.loads(js)
    for key in ("s", "s0", "s1"):
        assert f"{key}={rec[key]}" in table.split()


def test_measure_truth_table_file(capsys, tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("n=2\n0111\n")
    code, out, _ = run(capsys, "measure", "--input", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out)["s1"] == 1


def test_measure_bad_file(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("n=2\n01x1\n")
    code, _, err = run(capsys, "measure", "--input", str(path))
    assert code == 2
    assert "parse error" in err


def test_measure_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "measure", "--input", str(tmp_path / "nope"))
    assert code == 2


def test_construct_to_file(capsys, tmp_path):
    path = tmp_path / "v.txt"
    code, out, _ = run(capsys, "construct", "--n", "5", "--d", "3", "--irreducible", "-o", str(path))
    assert code == 0
    s = parse_vertex_set(path.read_text())
    assert len(s) == 14 and min_degree(s) == 3 and is_irreducible(s)
    assert "14 vertices" in out


def test_construct_stdout_is_a_vertex_file(capsys):
    code, out, err = run(capsys, "construct", "--n", "3", "--d", "1", "--simon")
    assert code == 0
    assert parse_vertex_set(out).to_strings() == ["000", "001"]
    assert "2 vertices" in err


def test_construct_infeasible(capsys):
    code, _, err = run(capsys, "construct", "--n", "1", "--d", "0", "--irreducible")
    assert code == 3
    assert "not possible" in err


def test_construct_bad_range(capsys):
    assert run(capsys, "construct", "--n", "3", "--d", "4", "--simon")[0] == 2


def test_search_witness_output(capsys, tmp_path):
    path = tmp_path / "w.txt"
    code, out, _ = run(
        capsys, "search", "--n", "3", "--d", "2", "--irreducible", "--witness-output", str(path)
    )
    assert code == 0
    assert "size 6" in out
    w = parse_vertex_set(path.read_text())
    assert len(w) == 6 and min_degree(w) == 2 and is_irreducible(w)


def test_search_infeasible(capsys):
    assert run(capsys, "search", "--n", "1", "--d", "0", "--irreducible")[0] == 3


def test_search_budget(capsys):
    code, out, _ = run(
        capsys, "search", "--n", "5", "--d", "3", "--irreducible", "--allow-large", "--budget", "50"
    )
    assert code == 4
    assert "budget exceeded" in out


def test_search_needs_allow_large(capsys):
    assert run(capsys, "search", "--n", "5", "--d", "3")[0] == 2


def test_verify_json_certificate(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "simon", "--n", "3", "--format", "json", "--no-timing")
    assert code == 0
    cert = json.loads(out)
    assert cert["verdict"] == "verified"
    assert cert["elapsed_ms"] is None
    assert cert["subsets_examined"] == 255


def test_verify_refuted_exit(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "lemma-fancy", "--n", "2")
    assert code == 1
    assert "verdict=refuted" in out


def test_verify_partial_and_resume(capsys, tmp_path):
    path = tmp_path / "main5.json"
    code, _, _ = run(
        capsys, "verify", "--claim", "main", "--n", "5", "--allow-large", "--budget", "2000",
        "--format", "json", "-o", str(path),
    )
    assert code == 4
    assert json.loads(path.read_text())["verdict"] == "partial"
    code, out, _ = run(
        capsys, "verify", "--claim", "main", "--n", "5", "--allow-large", "--resume", str(path), "--format", "json"
    )
    assert code == 0
    assert [r["measured"] for r in json.loads(out)["details"]["per_d"]] == [2, 4, 8, 14, 24, 32]


def test_verify_caps(capsys):
    assert run(capsys, "verify", "--claim", "main", "--n", "6", "--allow-large")[0] == 2
    assert run(capsys, "verify", "--claim", "main", "--n", "5")[0] == 2
    assert run(capsys, "verify", "--claim", "gap", "--n", "5", "--allow-large")[0] == 2


def test_argparse_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--claim", "bogus", "--n", "2"])
    assert exc.value.code == 2


def test_threads_env_and_flag_do_not_change_output(capsys, monkeypatch):
    args = ["verify", "--claim", "gap", "--n", "4", "--format", "json", "--no-timing"]
    _, base, _ = run(capsys, *args)
    monkeypatch.setenv("CUBESENSE_THREADS", "4")
    _, env, _ = run(capsys, *args)
    _, flag, _ = run(capsys, *args, "--threads", "8")
    assert base == env == flag


def test_bad_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("CUBESENSE_THREADS", "many")
    assert run(capsys, "verify", "--claim", "gap", "--n", "2")[0] == 2
