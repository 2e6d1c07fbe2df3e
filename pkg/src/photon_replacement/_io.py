"""CSV/JSON writers shared by the command-line front end."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable, Sequence

import numpy as np


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        return f"{v:.11e}"
    if isinstance(value, complex):
        return f"{value.real:.11e}{value.imag:+.11e}j"
    return str(value)


def metadata_lines(meta: dict) -> list[str]:
    return [f"# {key}: {json.dumps(meta[key], sort_keys=True, default=str)}" for key in meta]


def table_csv(columns: Sequence[str], rows: Iterable[dict], meta: dict) -> str:
    buf = io.StringIO()
    for line in metadata_lines(meta):
        buf.write(line + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(row.get(c)) for c in columns])
    return buf.getvalue()


def matrix_csv(x: np.ndarray, p: np.ndarray, values: np.ndarray, meta: dict) -> str:
    """Header row holds the x axis, first column the p axis."""
    buf = io.StringIO()
    for line in metadata_lines(meta):
        buf.write(line + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["p\\x"] + [fmt(float(v)) for v in x])
    for pi, row in zip(p, values):
        writer.writerow([fmt(float(pi))] + [fmt(float(v)) for v in row])
    return buf.getvalue()


def read_table_csv(text: str) -> tuple[dict, list[dict]]:
    """Parse a table written by :func:`table_csv` back into metadata and float rows."""
    meta = {}
    body = []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, val = line[2:].partition(": ")
            meta[key] = json.loads(val)
        elif line:
            body.append(line)
    reader = csv.DictReader(body)
    rows = []
    for row in reader:
        parsed = {}
        for k, v in row.items():
            try:
                parsed[k] = float(v) if v != "" else None
            except ValueError:
                parsed[k] = v
        rows.append(parsed)
    return meta, rows


def read_matrix_csv(text: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    body = [line for line in text.splitlines() if line and not line.startswith("#")]
    head = body[0].split(",")
    x = np.array([float(v) for v in head[1:]])
    rows = [[float(v) for v in line.split(",")] for line in body[1:]]
    arr = np.array(rows)
    return x, arr[:, 0], arr[:, 1:]


def to_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, default=_json_default) + "\n"


def _json_default(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"cannot serialise {type(obj).__name__}")
