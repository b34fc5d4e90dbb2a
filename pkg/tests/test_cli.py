import json

import pytest

from adele_forge.cli import main, run_config
from adele_forge.errors import DomainError, SchemaError

WEIL_DOC = {
    "field": {"p": 5},
    "curve": {"model": "elliptic", "a": -1, "b": 0},
    "task": "weil",
    "l": 2,
    "P": [0, 0],
    "Q": [1, 0],
}


def test_rr_table_task():
    doc = {
        "field": {"p": 5},
        "curve": {"model": "projective-line"},
        "task": "rr-table",
        "degrees": [-3, 5],
    }
    rep = run_config(doc)
    assert rep["oracle"]["riemann_roch_closed_form"] == "match"
    rows = rep["result"]["table"]
    assert len(rows) == 9
    for row in rows:
        assert int(row["h0"]) - int(row["h1"]) == int(row["degree"]) + 1


def test_intersect_task():
    doc = {
        "field": {"p": 7},
        "task": "intersect",
        "divisor1": [{"form": [[2, 0, 0, 1], [0, 2, 0, 1], [0, 0, 2, -1]], "multiplicity": 1}],
        "divisor2": [{"form": [[2, 0, 0, 1], [0, 2, 0, 2], [0, 0, 2, -3]], "multiplicity": 1}],
    }
    rep = run_config(doc)
    assert rep["result"]["intersection_number"] == "4"
    assert rep["oracle"]["oracles"] == "match"
    assert rep["oracle"]["bezout"] == "4"


def test_weil_task():
    rep = run_config(WEIL_DOC)
    assert rep["result"]["pairing"] == ["4"]
    assert rep["oracle"]["miller_oracle"] == "match"


def test_massey_task():
    doc = dict(WEIL_DOC)
    doc["task"] = "massey"
    rep = run_config(doc)
    assert rep["result"]["direct_image"] == ["4"]
    assert rep["oracle"]["pairing_oracle"] == "match"


def test_tame_and_reciprocity_tasks():
    doc = {
        "field": {"p": 7},
        "curve": {"model": "projective-line"},
        "task": "tame",
        "symbol": [[{"num": [0, 1]}, {"num": [5, 1]}, 1]],
        "place": {"type": "finite", "poly": [5, 1]},
    }
    rep = run_config(doc)
    assert rep["result"]["value"] == ["2"]
    doc = {
        "field": {"p": 7},
        "curve": {"model": "projective-line"},
        "task": "reciprocity",
        "symbols": [[[{"num": [0, 1]}, {"num": [6, 1]}, 1]]],
    }
    rep = run_config(doc)
    assert rep["oracle"]["weil_reciprocity"] == "match"


def test_report_deterministic():
    a = json.dumps(run_config(WEIL_DOC), sort_keys=True)
    b = json.dumps(run_config(WEIL_DOC), sort_keys=True)
    assert a == b


def test_integers_are_strings():
    rep = run_config(WEIL_DOC)

    def walk(node):
        if isinstance(node, dict):
            for v in node.values():
                walk(v)
        elif isinstance(node, list):
            for v in node:
                walk(v)
        else:
            assert not isinstance(node, int) or isinstance(node, bool)

    walk(rep["result"])
    walk(rep["oracle"])


def test_schema_rejections():
    with pytest.raises(SchemaError):
        run_config({"task": "nonsense"})
    with pytest.raises(SchemaError):
        run_config(dict(WEIL_DOC, extra=1))
    with pytest.raises(SchemaError):
        run_config({"task": "weil"})
    bad_field = dict(WEIL_DOC)
    bad_field["field"] = {"p": 4}
    with pytest.raises(SchemaError):
        run_config(bad_field)
    bad_place = {
        "field": {"p": 5},
        "curve": {"model": "projective-line"},
        "task": "tame",
        "symbol": [[{"num": [0, 1]}, {"num": [1, 1]}, 1]],
        "place": {"type": "finite", "poly": [1, 0, 1]},  # reducible over GF(5)
    }
    with pytest.raises((SchemaError, DomainError)):
        run_config(bad_place)


def test_domain_error_for_off_curve_point():
    doc = dict(WEIL_DOC)
    doc["P"] = [0, 1]
    with pytest.raises(DomainError):
        run_config(doc)


def test_main_exit_codes(tmp_path, capsys):
    cfg = tmp_path / "weil.json"
    cfg.write_text(json.dumps(WEIL_DOC))
    out = tmp_path / "report.json"
    assert main(["run", str(cfg), "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["result"]["pairing"] == ["4"]

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"task": "weil"}))
    assert main(["run", str(bad)]) == 2

    dom = tmp_path / "dom.json"
    dom.write_text(json.dumps(dict(WEIL_DOC, P=[0, 1])))
    assert main(["run", str(dom)]) == 1

    missing = tmp_path / "missing.json"
    assert main(["run", str(missing)]) == 2
