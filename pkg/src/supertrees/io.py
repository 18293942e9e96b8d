"""JSON graph files and CSV/JSON report export."""

from __future__ import annotations

import csv
import io as _io
import json
import math
from pathlib import Path
from typing import Iterable, Sequence

from .errors import IoError, ParseError, SupertreeError
from .hypergraph import Hypergraph, build

ENUMERATE_COLUMNS = ["code", "n", "m", "d", "p", "q_pendent", "q_value", "lower", "upper", "iterations"]


def graph_from_dict(data) -> Hypergraph:
    if not isinstance(data, dict):
        raise ParseError("graph JSON must be an object with keys k, n, edges")
    for key in ("k", "n", "edges"):
        if key not in data:
            raise ParseError(f"missing field {key!r}")
    k, n, edges = data["k"], data["n"], data["edges"]
    for key, value in (("k", k), ("n", n)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise ParseError(f"field {key!r} must be an integer, got {value!r}")
    if not isinstance(edges, list):
        raise ParseError("field 'edges' must be a list")
    for j, e in enumerate(edges):
        if not isinstance(e, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in e):
            raise ParseError(f"edge {j} must be a list of integers, got {e!r}")
        if len(e) != k:
            raise ParseError(f"edge {j} has {len(e)} vertices, expected k={k}")
    try:
        return build(k, n, edges)
    except SupertreeError as exc:
        raise ParseError(str(exc)) from exc


def loads_graph(text: str) -> Hypergraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return graph_from_dict(data)


def dumps_graph(G: Hypergraph) -> str:
    return json.dumps(G.to_dict())


def load_graph(path) -> Hypergraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return loads_graph(text)


def save_graph(G: Hypergraph, path) -> None:
    _write(path, dumps_graph(G) + "\n")


def _write(path, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _cell(value):
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, bool):
        return str(value).lower()
    return value


def rows_to_csv(rows: Sequence[dict], columns: Sequence[str] | None = None) -> str:
    """CSV text; columns default to the union of row keys in first-seen order."""
    if columns is None:
        columns = []
        for row in rows:
            columns.extend(key for key in row if key not in columns)
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _cell(row.get(key, "")) for key in columns})
    return buf.getvalue()


def _json_default(obj):
    if hasattr(obj, "tolist"):
        return obj.tolist()
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return str(obj)


def _finite(obj):
    # JSON has no inf/nan
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    return obj


def to_json(obj) -> str:
    if hasattr(obj, "to_dict"):
        obj = obj.to_dict()
    return json.dumps(_finite(obj), indent=2, default=_json_default)


def write_text(path, text: str) -> None:
    _write(path, text)


def write_rows(path, rows: Iterable[dict], fmt: str = "csv", columns=None) -> None:
    rows = list(rows)
    _write(path, rows_to_csv(rows, columns) if fmt == "csv" else to_json(rows) + "\n")
