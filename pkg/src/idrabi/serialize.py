"""Deterministic CSV/JSON output helpers.

All writers format reals with 17 significant digits (lossless double
round-trip), always use '.' decimals, LF line endings, and go through an
atomic temp-file + rename so readers never observe partial output.  Repeated
runs with the same inputs must produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np


def format_float(value: float) -> str:
    return f"{float(value):.17g}"


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def json_dumps(obj, indent: int | None = 2) -> str:
    return json.dumps(obj, indent=indent, default=_json_default)


def atomic_write_text(path, text: str) -> Path:
    """Write `text` to `path` via a same-directory temp file and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
    return path


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


def csv_text(header, rows, config: dict | None = None) -> str:
    """Render rows to CSV text; optional effective-config echo as a '#' line."""
    buf = io.StringIO()
    if config is not None:
        buf.write("# config: " + json_dumps(config, indent=None) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow([_format_cell(cell) for cell in row])
    return buf.getvalue()


def write_csv(path, header, rows, config: dict | None = None) -> Path:
    return atomic_write_text(path, csv_text(header, rows, config))


def write_json(path, obj, indent: int | None = 2) -> Path:
    return atomic_write_text(path, json_dumps(obj, indent=indent) + "\n")
