from __future__ import annotations

import csv
import io
import json

import pytest

from seqcert import bounds
from seqcert.comparator import Claim, check
from seqcert.io import (CacheError, CacheRecord, Report, bound_report, cache_filename,
                        certificate_report, emit_report, load_window, save_window)
from seqcert.sequences import ExactValue, Family, SequenceId, window

ALL_SEQUENCES = [SequenceId(f) for f in Family if f is not Family.S_FAMILY] + [
    SequenceId.sfam(2), SequenceId.sfam(3), SequenceId.sfam(1, 1), SequenceId.sfam(2, 2)]


@pytest.mark.parametrize("seq", ALL_SEQUENCES, ids=str)
def test_round_trip(tmp_path, seq):
    win = window(seq, seq.first_index, 201 - seq.first_index)
    path = save_window(tmp_path / cache_filename(seq), win)
    assert load_window(path, verify=True) == win


def test_motzkin_round_trip(tmp_path):
    win = window(SequenceId(Family.MOTZKIN), 0, 11)
    assert load_window(save_window(tmp_path / "m.txt", win)) == win


def _write(tmp_path, lines):
    p = tmp_path / "c.txt"
    p.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return p


def test_gap_names_missing_index(tmp_path):
    win = window(SequenceId(Family.MOTZKIN), 0, 10)
    lines = [CacheRecord("motzkin", "", n, v).render() for n, v in zip(win.indices(), win.values) if n != 5]
    with pytest.raises(CacheError, match="missing index 5") as err:
        load_window(_write(tmp_path, lines))
    assert err.value.index == 5


def test_franel_record_accepted(tmp_path):
    rec = CacheRecord.parse("sfam|r=3|4|346")
    assert rec.index == 4 and rec.value == ExactValue(346)
    win = load_window(_write(tmp_path, ["sfam|r=3|4|346"]), verify=True)
    assert win.start == 4 and int(win[4]) == 346


def test_wrong_value_caught_on_verify(tmp_path):
    p = _write(tmp_path, ["sfam|r=3|4|347"])
    load_window(p)
    with pytest.raises(CacheError, match="index 4"):
        load_window(p, verify=True)


@pytest.mark.parametrize("lines, pattern", [
    (["motzkin||0|1", "motzkin||0|1"], "duplicated"),
    (["motzkin||0|1", "trinomial||1|1"], "mixed"),
    (["motzkin||0|01"], "unparseable value"),
    (["motzkin||x|1"], "unparseable index"),
    (["motzkin|0|1"], "4 '\\|'-separated"),
    (["bernoulli-abs||0|1"], "starts at index 1"),
    (["sfam|r=0|0|1"], "r_0 must be positive"),
])
def test_malformed_cache_rejected(tmp_path, lines, pattern):
    with pytest.raises(CacheError, match=pattern):
        load_window(_write(tmp_path, lines))


def test_rational_values_reduce(tmp_path):
    rec = CacheRecord.parse("bernoulli-abs||1|2/12")
    assert rec.value == ExactValue(1, 6)


def test_empty_file_rejected(tmp_path):
    with pytest.raises(CacheError):
        load_window(_write(tmp_path, []))


# --- reports ----------------------------------------------------------------------

def test_empty_certificate_report_is_valid():
    cert = check(SequenceId(Family.MOTZKIN), Claim.ROOT_INCREASING, (5, 4))
    doc = json.loads(emit_report(certificate_report(cert)))
    assert doc["rows"] == [] and doc["kind"] == "certificate"
    text = emit_report(certificate_report(cert), "csv").decode()
    assert text.startswith("sequence,params,claim,index")


def test_bernoulli_ratio_certificate_rows():
    cert = check(SequenceId(Family.BERNOULLI_ABS_2N), Claim.RATIO_DECREASING, (2, 10))
    doc = json.loads(emit_report(certificate_report(cert)))
    assert len(doc["rows"]) == 9 and all(r["holds"] for r in doc["rows"])
    assert doc["metadata"]["all_hold"] is True


def test_delta2_bound_table():
    results = [bounds.delta2_upper_bound(n) for n in range(4, 9)]
    rows = list(csv.DictReader(io.StringIO(emit_report(bound_report(results), "csv").decode())))
    assert len(rows) == 5
    assert all(r["claim"] == "negative" and r["holds"] == "true" for r in rows)
    assert all(r["value_hi"].startswith("-") for r in rows)


def test_reports_are_byte_identical():
    cert = check(SequenceId.sfam(2, 2), Claim.RATIO_DECREASING, (1, 30))
    for fmt in ("json", "csv"):
        assert emit_report(certificate_report(cert), fmt) == emit_report(certificate_report(cert), fmt)


def test_timestamp_only_with_metadata():
    rep = Report("acceptance", [], {})
    assert "timestamp" not in json.loads(emit_report(rep))["metadata"]
    assert "timestamp" in json.loads(emit_report(rep, with_metadata=True))["metadata"]


def test_unknown_kind_and_format_rejected():
    with pytest.raises(ValueError):
        Report("plot")
    with pytest.raises(ValueError):
        emit_report(Report("acceptance"), "xml")
