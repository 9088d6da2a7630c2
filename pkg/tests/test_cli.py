import csv
import io
import json
import math

import pytest

from sumsetlab.cli import EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_constants_text(capsys):
    code, out, _ = run(capsys, "constants", "--which", "cube-upper", "--n", "2", "--m", "2")
    assert code == EXIT_OK
    assert "cube_upper_exponent(2,2)" in out
    assert repr(math.log(5) / (2 * math.log(3))) in out


def test_constants_json(capsys):
    code, out, _ = run(
        capsys, "constants", "--which", "conjugate", "--p", "4", "--format", "json"
    )
    assert code == EXIT_OK
    body = json.loads(out)
    assert body["value"] == pytest.approx(4.0 / 3.0)
    assert body["config"]["threads"] == 1


def test_constants_missing_arg_is_usage_error(capsys):
    code, _, err = run(capsys, "constants", "--which", "tau")
    assert code == EXIT_USAGE
    assert "error:" in err


def test_threads_env_recorded(capsys, monkeypatch):
    monkeypatch.setenv("SUMSETLAB_THREADS", "4")
    code, out, _ = run(
        capsys, "constants", "--which", "conjugate", "--p", "2", "--format", "json"
    )
    assert code == EXIT_OK
    assert json.loads(out)["config"]["threads"] == 4


def test_lemmas_pass(capsys):
    code, out, _ = run(
        capsys, "lemmas", "--which", "key-lemma-2", "--n", "3", "--grid", "500"
    )
    assert code == EXIT_OK
    assert "[PASS]" in out


def test_lemmas_unknown_id_is_usage_error(capsys):
    code, _, err = run(capsys, "lemmas", "--which", "bogus")
    assert code == EXIT_USAGE
    assert "unknown lemma id" in err


def test_verify_ok(capsys):
    code, out, _ = run(capsys, "verify", "--statement", "two-sets", "--m", "1", "--d", "1")
    assert code == EXIT_OK
    assert "[PASS]" in out
    assert "9 instances" in out


def test_verify_violation_exit_code(capsys):
    # exponent above sharp forces violations -> exit 1
    code, out, _ = run(
        capsys, "verify", "--statement", "two-sets", "--m", "2", "--d", "1",
        "--p", "0.75",
    )
    assert code == EXIT_VIOLATION
    assert "[FAIL]" in out


def test_verify_random_without_seed_is_usage_error(capsys):
    code, _, err = run(
        capsys, "verify", "--statement", "two-sets", "--m", "1", "--d", "1",
        "--mode", "random", "--count", "5",
    )
    assert code == EXIT_USAGE
    assert "seed" in err


def test_json_and_csv_agree(capsys, tmp_path):
    args = ["verify", "--statement", "energy", "--d", "2"]
    code, jout, _ = run(capsys, *args, "--format", "json")
    assert code == EXIT_OK
    body = json.loads(jout)

    code, cout, _ = run(capsys, *args, "--format", "csv")
    assert code == EXIT_OK
    rows = {r[0]: r[1] for r in csv.reader(io.StringIO(cout)) if r[0] != "key"}
    assert json.loads(rows["instances"]) == body["instances"] == 15
    assert json.loads(rows["violations"]) == body["violations"] == 0
    assert json.loads(rows["min_log_margin"]) == pytest.approx(
        body["min_log_margin"]
    )


def test_out_file_roundtrip(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code, stdout, _ = run(
        capsys, "verify", "--statement", "dilate", "--d", "1",
        "--out", str(out_path), "--format", "json",
    )
    assert code == EXIT_OK
    assert json.loads(out_path.read_text()) == json.loads(stdout)


def test_search_ok(capsys):
    code, out, _ = run(
        capsys, "search", "--n", "2", "--m", "1", "--d", "1", "--budget", "2"
    )
    assert code == EXIT_OK
    assert "no violation found" in out
