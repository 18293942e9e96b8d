import csv
import io
import json

import pytest

from supertrees import errors
from supertrees.families import s1
from supertrees.hypergraph import canonical_code
from supertrees.io import (
    ENUMERATE_COLUMNS,
    dumps_graph,
    load_graph,
    loads_graph,
    rows_to_csv,
    save_graph,
    to_json,
    write_rows,
)


def test_roundtrip(tmp_path):
    G = s1(5, 3, 3)
    path = tmp_path / "g.json"
    save_graph(G, path)
    H = load_graph(path)
    assert canonical_code(H) == canonical_code(G)
    assert H.edges == G.edges


def test_edges_sorted_on_load():
    G = loads_graph('{"k": 3, "n": 5, "edges": [[4, 3, 2], [2, 1, 0]]}')
    assert G.edges == ((2, 3, 4), (0, 1, 2))
    assert json.loads(dumps_graph(G))["edges"] == [[2, 3, 4], [0, 1, 2]]


@pytest.mark.parametrize("text, needle", [
    ('{"k": 3, "n": 5, "edges": [[0, 1, 2], [2, 3]]}', "edge 1"),
    ('{"k": 3, "n": 5}', "edges"),
    ('{"k": "3", "n": 5, "edges": []}', "'k'"),
    ('{"k": 3, "n": 5, "edges": [[0, 1, "x"]]}', "edge 0"),
    ('[1, 2]', "object"),
    ('{"k": 3,', "line 1"),
    ('{"k": 3, "n": 3, "edges": [[0, 1, 7]]}', "outside"),
])
def test_parse_errors(text, needle):
    with pytest.raises(errors.ParseError) as info:
        loads_graph(text)
    assert needle in str(info.value)


def test_missing_file(tmp_path):
    with pytest.raises(errors.IoError):
        load_graph(tmp_path / "nope.json")


def test_unwritable(tmp_path):
    with pytest.raises(errors.IoError):
        save_graph(s1(4, 3, 3), tmp_path / "missing-dir" / "g.json")


def test_empty_csv_has_header():
    text = rows_to_csv([], ENUMERATE_COLUMNS)
    assert text.strip() == ",".join(ENUMERATE_COLUMNS)


def test_csv_columns_and_lists():
    rows = [{"a": 1, "b": [1, 2]}, {"a": 2, "c": "x"}]
    parsed = list(csv.DictReader(io.StringIO(rows_to_csv(rows))))
    assert parsed[0]["b"] == "[1, 2]"
    assert parsed[1]["c"] == "x"


def test_json_non_finite():
    out = json.loads(to_json({"a": float("nan"), "b": float("inf"), "c": 1.5}))
    assert out == {"a": "nan", "b": "inf", "c": 1.5}


def test_write_rows(tmp_path):
    write_rows(tmp_path / "r.csv", [{"x": 1}], "csv")
    write_rows(tmp_path / "r.json", [{"x": 1}], "json")
    assert (tmp_path / "r.csv").read_text().splitlines() == ["x", "1"]
    assert json.loads((tmp_path / "r.json").read_text()) == [{"x": 1}]
