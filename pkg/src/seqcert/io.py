"""Cache files for sequence windows and deterministic JSON/CSV reports.

Cache files hold one ``family|params|n|value`` record per line (UTF-8), sorted
by index, with values written as decimal ``numerator[/denominator]`` strings.
"""
from __future__ import annotations

import csv
import io as _stdio
import json
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .interval import IntervalValue, format_endpoint
from .sequences import ExactValue, SequenceId, SequenceWindow, value

_DECIMAL = re.compile(r"(0|[1-9][0-9]*)")
_VALUE = re.compile(r"(-?)(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?")


class CacheError(ValueError):
    """Malformed, gapped or inconsistent cache file."""

    def __init__(self, message: str, *, line: int | None = None, index: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.index = index


@dataclass(frozen=True)
class CacheRecord:
    family: str
    params: str
    index: int
    value: ExactValue

    def render(self) -> str:
        return f"{self.family}|{self.params}|{self.index}|{self.value}"

    @classmethod
    def parse(cls, line: str, lineno: int | None = None) -> "CacheRecord":
        parts = line.rstrip("\r\n").split("|")
        if len(parts) != 4:
            raise CacheError(f"expected 4 '|'-separated fields, got {len(parts)}", line=lineno)
        family, params, idx, val = parts
        if not _DECIMAL.fullmatch(idx):
            raise CacheError(f"unparseable index {idx!r}", line=lineno)
        m = _VALUE.fullmatch(val)
        if not m:
            raise CacheError(f"unparseable value {val!r}", line=lineno)
        sign, num, den = m.groups()
        p = int(num) * (-1 if sign else 1)
        return cls(family, params, int(idx), ExactValue(p, int(den) if den else 1))


def window_records(window: SequenceWindow) -> list[CacheRecord]:
    fam, params = window.id.family.token, window.id.params
    return [CacheRecord(fam, params, n, v) for n, v in zip(window.indices(), window.values)]


def save_window(path, window: SequenceWindow) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = "".join(rec.render() + "\n" for rec in window_records(window))
    path.write_text(text, encoding="utf-8")
    return path


def load_window(path, *, verify: bool = False) -> SequenceWindow:
    """Read a cache file; with ``verify`` every value is recomputed and compared."""
    path = Path(path)
    records: list[CacheRecord] = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            records.append(CacheRecord.parse(line, lineno))
    if not records:
        raise CacheError(f"{path} holds no records")
    first = records[0]
    try:
        seq = SequenceId.parse(first.family, first.params)
    except ValueError as exc:
        raise CacheError(str(exc), line=1) from None
    for lineno, rec in enumerate(records, start=1):
        if (rec.family, rec.params) != (first.family, first.params):
            raise CacheError("mixed sequences in one cache file", line=lineno)
    expected = first.index
    for rec in records:
        if rec.index > expected:
            raise CacheError(f"index gap: missing index {expected} (next record is {rec.index})",
                             index=expected)
        if rec.index < expected:
            raise CacheError(f"index {rec.index} is duplicated or out of order", index=rec.index)
        expected += 1
    if first.index < seq.first_index:
        raise CacheError(f"{seq} starts at index {seq.first_index}", index=first.index)
    if verify:
        for rec in records:
            if value(seq, rec.index) != rec.value:
                raise CacheError(f"value at index {rec.index} does not match the generator",
                                 index=rec.index)
    return SequenceWindow(seq, first.index, tuple(r.value for r in records))


def cache_filename(seq: SequenceId) -> str:
    suffix = "_r" + "-".join(map(str, seq.r)) if seq.r else ""
    return f"{seq.family.token}{suffix}.txt"


# --- reports -------------------------------------------------------------------

REPORT_KINDS = ("certificate", "bound_table", "asym_table", "acceptance")

# leading CSV columns per kind, so that empty reports still carry a header
_COLUMNS = {
    "certificate": ["sequence", "params", "claim", "index", "holds", "method", "precision_bits"],
    "bound_table": ["name", "index", "claim", "value_lo", "value_hi", "holds", "method"],
    "asym_table": ["sequence", "n", "exact", "approx_lo", "approx_hi", "rel_err_lo", "rel_err_hi"],
    "acceptance": ["criterion", "title", "passed", "detail"],
}


@dataclass
class Report:
    kind: str
    rows: list[dict] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in REPORT_KINDS:
            raise ValueError(f"report kind must be one of {REPORT_KINDS}")


def _cell(v):
    if isinstance(v, IntervalValue):
        return [format_endpoint(v._lo), format_endpoint(v._hi)]
    if isinstance(v, ExactValue):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_cell(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _cell(x) for k, x in v.items()}
    if hasattr(v, "_mpf_"):
        return format_endpoint(v)
    if hasattr(v, "value") and not isinstance(v, (int, float, str, bool)):
        return v.value
    return v


def _flatten(row: dict) -> dict:
    """Interval cells become ``<name>_lo`` / ``<name>_hi`` columns for CSV."""
    out = {}
    for k, v in row.items():
        if isinstance(v, IntervalValue):
            out[f"{k}_lo"], out[f"{k}_hi"] = _cell(v)
        else:
            c = _cell(v)
            if isinstance(c, (list, dict)):
                c = json.dumps(c, sort_keys=True)
            elif isinstance(c, bool):
                c = "true" if c else "false"
            elif c is None:
                c = ""
            out[k] = c
    return out


def emit_report(report: Report, fmt: str = "json", *, with_metadata: bool = False) -> bytes:
    """Render a report as bytes; identical inputs always produce identical bytes."""
    if fmt == "json":
        doc = {
            "kind": report.kind,
            "metadata": {"tool_version": __version__, **_cell(report.metadata)},
            "rows": [_cell(r) for r in report.rows],
        }
        if with_metadata:
            doc["metadata"]["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8")
    if fmt == "csv":
        flat = [_flatten(r) for r in report.rows]
        columns: list[str] = list(_COLUMNS[report.kind])
        for r in flat:
            for k in r:
                if k not in columns:
                    columns.append(k)
        buf = _stdio.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\r\n")
        writer.writeheader()
        writer.writerows(flat)
        return buf.getvalue().encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")


def certificate_report(cert, metadata: dict | None = None) -> Report:
    rows = [
        {
            "sequence": cert.id.family.token,
            "params": cert.id.params,
            "claim": v.claim.value,
            "index": v.index,
            "holds": v.holds,
            "method": v.method.value,
            "precision_bits": v.precision_bits,
        }
        for v in cert.verdicts
    ]
    meta = {
        "sequence": str(cert.id),
        "claim": cert.claim.value,
        "range": [cert.n_lo, cert.n_hi],
        "all_hold": cert.all_hold,
        "first_failure": cert.first_failure,
        "observed_start": cert.observed_start,
    }
    meta.update(metadata or {})
    return Report("certificate", rows, meta)


def bound_report(results, metadata: dict | None = None) -> Report:
    rows = []
    for r in results:
        row = {
            "name": r.name,
            "index": str(r.index) if not isinstance(r.index, int) else r.index,
            "claim": r.claim.value,
            "value": r.value,
            "holds": r.holds,
            "method": f"interval-{r.precision_bits}",
        }
        if r.bracket is not None:
            row["bracket"] = [str(b) for b in r.bracket]
        rows.append(row)
    return Report("bound_table", rows, dict(metadata or {}))
