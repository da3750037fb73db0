"""Output helpers: atomic file writes, CSV tables and JSON documents."""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

FLOAT_FMT = "{:.12g}"
OUT_ENV = "PAULI_COHERENT_OUT"


def fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return FLOAT_FMT.format(v)
    return str(v)


def default_out_dir() -> Path:
    return Path(os.environ.get(OUT_ENV) or ".")


def atomic_write_text(path, text: str) -> Path:
    """Write via a temp file in the same directory followed by a rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def write_csv(path, header, rows) -> Path:
    return atomic_write_text(path, csv_text(header, rows))


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(path, obj) -> Path:
    return atomic_write_text(path, json_text(obj))


SCAN_HEADER = ("p1", "p2", "p3", "q1_raw", "best_rate", "best_code", "gap", "superadditive")
SLICE_HEADER = ("p1", "p2", "value")
COMPARE_HEADER = ("p1", "p2", "p3", "winner", "phi_rate", "chi_rate")


def scan_rows(records):
    for r in records:
        code = "GA" if r.best_code is None else str(r.best_code)
        yield (r.p1, r.p2, r.p3, r.q1_raw, r.best_rate, code, r.gap, r.superadditive)


def compare_rows(records):
    for r in records:
        yield (r.p1, r.p2, r.p3, r.winner, r.phi_rate, r.chi_rate)
