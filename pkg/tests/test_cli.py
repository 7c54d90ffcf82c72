from __future__ import annotations

import csv
import io
import json

import pytest

from spreadcodes.cli import decode_text, main
from spreadcodes.experiment import parse_code
from spreadcodes.linalg import format_matrix
from spreadcodes.spread import encode, random_point

DEL_CODE = "spread:q=2,k=4,m=2,p=x^4+x+1,orient=T"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tables_first_comparison(capsys):
    code, out, _ = run(capsys, "tables", "--paper-table", "ex19a")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0] == {"n": "6", "n_prime": "4", "q_hybrid": "7", "rate_spread": "0.366",
                       "rate_hybrid": "0.341", "e_avg": "100", "e_H": "154"}
    assert [r["e_H"] for r in rows] == ["154", "1789", "20686", "239122", "2767444"]


def test_tables_json_and_counts(capsys, tmp_path):
    out_file = tmp_path / "t.json"
    assert main(["tables", "--paper-table", "hybspr", "--format", "json", "--out", str(out_file)]) == 0
    rows = json.loads(out_file.read_text())
    assert rows[0]["kind"] == "hybrid" and rows[0]["order_of_magnitude"] == -33
    code, out, _ = run(capsys, "tables", "--counts", "--k", "3", "--max-m", "3")
    assert code == 0 and len(list(csv.DictReader(io.StringIO(out)))) == 2


def test_decode_golden(capsys, fixtures):
    code, out, _ = run(capsys, "decode", "--code", DEL_CODE, "--model", "cec-del", str(fixtures / "deletions_example.txt"))
    assert code == 0
    assert out == (fixtures / "deletions_example.expected").read_text()


@pytest.mark.parametrize("spec,model", [("spread:q=2,k=3,m=3", "cec"), ("spread:q=3,k=2,m=3", "rec"),
                                         ("spread:q=4,k=2,m=2", "cec-del")])
def test_decode_round_trip(spec, model):
    code = parse_code(spec, model, None)
    for seed in range(5):
        u = random_point(code, seed)
        text = format_matrix(encode(code, u))
        assert decode_text(code, model, text).startswith(f"point: {u}\n")


def test_decode_failure_exit_code(capsys, tmp_path):
    f = tmp_path / "obs.txt"
    f.write_text("? ? 0 1\n? ? 1 1\n")
    code, _, err = run(capsys, "decode", "--code", "spread:q=2,k=2,m=2", "--model", "cec", str(f))
    assert code == 1 and "UndecodableError" in err


def test_simulate_trials_zero(capsys):
    code, out, err = run(capsys, "simulate", "--trials", "0")
    assert code == 0
    assert out.strip() == "index,message,weight,erased_columns,status,detail"
    assert json.loads(err)["trials"] == 0


def test_simulate_requires_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--trials", "5"])
    assert exc.value.code == 2


def test_simulate_deterministic_and_worker_independent(capsys):
    argv = ["simulate", "--code", "spread:q=2,k=3,m=3", "--model", "cec", "--erasures", "random",
            "--trials", "60", "--seed", "11"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    _, c, _ = run(capsys, *argv, "--workers", "2")
    assert a == b == c
    _, d, _ = run(capsys, *argv[:-1], "12")
    assert a != d


def test_simulate_json(capsys):
    code, out, _ = run(capsys, "simulate", "--code", "hybrid:q=7,n=6,np=4,k=2", "--erasures", "2",
                       "--placement", "worst_cec", "--trials", "20", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["config"]["model"] == "hybrid-cec"
    assert doc["summary"]["successes"] == 20 and len(doc["trials"]) == 20
    assert "decode_ms" not in doc["trials"][0]


def test_orientation_mismatch_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--code", "spread:q=2,k=2,m=3", "--model", "cec", "--orient", "T", "--trials", "1"])
    assert exc.value.code == 2
    assert "orientation" in capsys.readouterr().err


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "rec", "--budget", "16")
    entries = json.loads(out)
    assert code == 0
    assert sum("skipped" in e for e in entries) == 1  # (2, 8) exceeds 16 bits
    assert all(e["match"] for e in entries if "match" in e)
