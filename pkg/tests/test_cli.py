from __future__ import annotations

import json

import pytest

from seqcert.cli import EXIT_FAIL, EXIT_OK, EXIT_UNDECIDED, EXIT_USAGE, main


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv("SEQCERT_CACHE_DIR", str(d))
    return d


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_franel(capsys, cache_dir):
    code, out, _ = run(capsys, "gen", "--family", "sfam", "--r", "3", "--to", "10")
    vals = out.split()
    assert code == EXIT_OK and len(vals) == 11
    assert vals[4:6] == ["346", "2252"]
    assert (cache_dir / "sfam_r3.txt").exists()


def test_gen_motzkin(capsys):
    assert run(capsys, "gen", "--family", "motzkin", "--to", "5")[1].split() == "1 1 2 4 9 21".split()


def test_gen_bernoulli_starts_at_one(capsys):
    assert run(capsys, "gen", "--family", "bernoulli-abs", "--to", "3")[1].split() == ["1/6", "1/30", "1/42"]


def test_gen_explicit_out(capsys, tmp_path):
    out = tmp_path / "t.txt"
    run(capsys, "gen", "--family", "trinomial", "--to", "3", "--out", str(out))
    assert out.read_text().splitlines() == ["trinomial||0|1", "trinomial||1|1", "trinomial||2|3", "trinomial||3|7"]


@pytest.mark.parametrize("argv", [
    ["gen", "--family", "fibonacci", "--to", "3"],
    ["gen", "--family", "sfam", "--to", "3"],
    ["gen", "--family", "sfam", "--r", "0,2", "--to", "3"],
    ["gen", "--family", "motzkin", "--r", "2", "--to", "3"],
    ["gen", "--family", "bernoulli-abs", "--from", "0", "--to", "3"],
    ["check", "--family", "motzkin", "--claim", "root-increasing", "--from", "5", "--to", "1"],
    ["check", "--family", "motzkin", "--claim", "root-increasing", "--to", "5", "--precision", "1024"],
    ["asym", "--n", "10"],
    ["asym", "--r", "2", "--n", "ten"],
    ["asym", "--family", "trinomial", "--n", "10", "--terms", "3"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", "--family", "motzkin", "--claim", "sideways", "--to", "3"])
    assert exc.value.code == 2


def test_check_euler_roots(capsys):
    code, out, err = run(capsys, "check", "--family", "euler-abs", "--claim", "root-increasing", "--from", "1", "--to", "60")
    assert code == EXIT_OK
    assert len(json.loads(out)["rows"]) == 60
    assert "all_hold=True" in err


def test_check_constant_roots_fail(capsys):
    code, out, err = run(capsys, "check", "--family", "sfam", "--r", "1", "--claim", "root-increasing", "--from", "1", "--to", "5")
    assert code == EXIT_FAIL
    assert json.loads(out)["metadata"]["first_failure"] == 1
    assert "first_failure=1" in err


def test_check_apery_ratio_reports_start(capsys):
    code, out, err = run(capsys, "check", "--family", "sfam", "--r", "2,2", "--claim", "ratio-decreasing",
                         "--from", "1", "--to", "200")
    assert code == EXIT_OK
    assert json.loads(out)["metadata"]["observed_start"] == 1
    assert "observed_start=1" in err


def test_check_csv_output(capsys, tmp_path):
    out = tmp_path / "c.csv"
    code, _, _ = run(capsys, "check", "--family", "motzkin", "--claim", "ratio-decreasing", "--to", "4",
                     "--format", "csv", "--out", str(out))
    lines = out.read_text().splitlines()
    assert code == EXIT_OK and len(lines) == 5 and lines[0].startswith("sequence,params,claim")


def test_asym_central_binomial(capsys):
    code, out, err = run(capsys, "asym", "--r", "2", "--n", "100")
    doc = json.loads(out)
    assert code == EXIT_OK and "lambda=0.5" in err and "mu=4" in err
    lo, hi = (float(x) for x in doc["rows"][0]["rel_err"])
    assert abs(lo + 1 / 800) < 1e-5 and abs(hi + 1 / 800) < 1e-5


def test_asym_motzkin_expansion(capsys):
    code, out, _ = run(capsys, "asym", "--family", "motzkin", "--n", "100", "--terms", "4")
    lo, hi = (abs(float(x)) for x in json.loads(out)["rows"][0]["rel_err"])
    assert code == EXIT_OK and max(lo, hi) < 1e-8


def test_asym_powers_of_two_exact(capsys):
    code, out, _ = run(capsys, "asym", "--r", "1", "--n", "7")
    row = json.loads(out)["rows"][0]
    assert code == EXIT_OK and row["exact"] == "128"
    assert float(row["approx"][0]) <= 128 <= float(row["approx"][1])


def test_asym_unreachable_tolerance_is_undecided(capsys):
    code, _, err = run(capsys, "asym", "--r", "2", "--n", "5", "--tolerance", "1e-300", "--max-precision", "128")
    assert code == EXIT_UNDECIDED and "undecided" in err


@pytest.mark.parametrize("argv", [
    ["--which", "delta1", "--from", "3", "--to", "10000"],
    ["--which", "delta2", "--from", "4", "--to", "10000"],
    ["--which", "stirling", "--from", "1", "--to", "1000"],
    ["--which", "eta", "--kind", "euler", "--to", "50"],
    ["--which", "consistency", "--to", "30"],
    ["--which", "elementary", "--to", "20"],
])
def test_bounds_hold(capsys, argv):
    assert run(capsys, "bounds", *argv)[0] == EXIT_OK


def test_bounds_below_claimed_range_fail(capsys):
    code, out, err = run(capsys, "bounds", "--which", "delta1", "--from", "1", "--to", "3")
    assert code == EXIT_FAIL and "failures at ['1', '2']" in err


def test_reproduce_small_grid(capsys, tmp_path, cache_dir):
    out_dir = tmp_path / "reports"
    code, out, _ = run(capsys, "reproduce", "--max-n", "50", "--out-dir", str(out_dir))
    lines = [ln for ln in out.splitlines() if ln.startswith("[")]
    assert len(lines) == 10
    doc = json.loads((out_dir / "acceptance.json").read_text())
    assert len(doc["rows"]) == 10
    assert (code == EXIT_OK) == doc["metadata"]["all_passed"] == all(r["passed"] for r in doc["rows"])
    assert doc["rows"][9]["passed"]
    assert any(cache_dir.iterdir())


def test_reproduce_rejects_corrupted_cache(capsys, tmp_path, cache_dir):
    cache_dir.mkdir()
    (cache_dir / "motzkin.txt").write_text("motzkin||0|1\nmotzkin||1|1\nmotzkin||2|3\n")
    code, _, err = run(capsys, "reproduce", "--max-n", "10", "--out-dir", str(tmp_path / "r"))
    assert code == EXIT_USAGE
    assert "motzkin.txt" in err and "index 2" in err
    assert not (tmp_path / "r").exists()
