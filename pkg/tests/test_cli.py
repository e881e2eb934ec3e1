from __future__ import annotations

import io
import json
import pathlib

import jsonschema
import pytest
from referencing import Registry, Resource

from kdarboux.cli import EXIT_DOMAIN, EXIT_FAIL, EXIT_OK, EXIT_UNSTABLE, EXIT_USAGE, run

ROOT = pathlib.Path(__file__).resolve().parent.parent
SCHEMAS = ROOT / "docs" / "schemas"
GOLDEN = pathlib.Path(__file__).parent / "golden"


def _registry():
    resources = []
    for path in SCHEMAS.glob("*.json"):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], Resource.from_contents(doc)))
    return Registry().with_resources(resources)


REGISTRY = _registry()


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    text = out.getvalue()
    return code, text, (json.loads(text) if text.strip() else None)


def validate(doc):
    name = doc["$schema"].rsplit("/", 1)[-1]
    schema = json.loads((SCHEMAS / name).read_text())
    jsonschema.Draft202012Validator(schema, registry=REGISTRY).validate(doc)


def test_toda_golden_is_byte_exact():
    code, text, doc = call("toda", "--n", "2", "--q", "1")
    assert code == EXIT_OK
    assert text == (GOLDEN / "toda_n2_q1.json").read_text()
    validate(doc)


def test_golden_encodes_the_sl2_example():
    # e^w (t_0 - t_a) + e^{-w} t_0, written out by hand
    doc = json.loads((GOLDEN / "toda_n2_q1.json").read_text())
    terms = {(tuple(r["wt"]), tuple(r["t"])): tuple(r["c"]) for r in doc["value"]}
    assert terms == {((1,), (0,)): (1, 1), ((1,), (1,)): (-1, 1), ((-1,), (0,)): (1, 1)}


def test_output_is_deterministic():
    first = call("suite", "--family", "A1", "--seed", "4")[1]
    assert first == call("suite", "--family", "A1", "--seed", "4")[1]


@pytest.mark.parametrize("argv", [
    ("relations", "--family", "A2"),
    ("relations", "--family", "A1", "--central", "1", "--algebra", "nildaha"),
    ("character", "--family", "B2", "--weight", "1,0"),
    ("length", "--family", "A1", "--word", "1,0"),
    ("order", "--family", "A1", "--kind", "semiinf", "--lhs", "1", "--rhs", ""),
    ("order", "--type", "A", "--rank", "2", "--kind", "bruhat", "--lhs", "0", "--rhs", "1,0"),
    ("image", "--family", "A2", "--word", "xi1 phi2"),
    ("chain", "--family", "A2", "--from", "1,2", "--to", "1", "--samples", "4", "--seed", "9"),
    ("toda", "--n", "3"),
    ("toda", "--n", "4", "--levi", "1,3", "--q", "2"),
    ("suite", "--family", "A1"),
])
def test_reports_validate_against_schemas(argv):
    code, _, doc = call(*argv)
    assert code == EXIT_OK, doc
    validate(doc)


def test_length_report():
    _, _, doc = call("length", "--family", "A1", "--word", "1,0")
    assert doc["length"] == 2 and doc["reduced_word"] == [1, 0]
    assert doc["element"] == {"u": [], "gamma": [-1]}


def test_order_answers():
    assert call("order", "--family", "A1", "--kind", "semiinf", "--lhs", "1", "--rhs", "")[2]["leq"] is True
    assert call("order", "--family", "A1", "--kind", "semiinf", "--lhs", "", "--rhs", "1")[2]["leq"] is False


def test_randomized_reports_record_the_seed():
    _, _, doc = call("chain", "--family", "A2", "--from", "1,2", "--to", "", "--samples", "3", "--seed", "17")
    assert doc["config"]["seed"] == 17 and doc["result"]["seed"] == 17


def test_mul_and_decompose_from_files(tmp_path):
    a = {"terms": [{"wt": [-1], "t": [0], "q": [[0, 1, 1]]}]}
    # xi = (1 - t) e^w = e^w - q e^w t
    b = {"terms": [{"wt": [1], "t": [0], "q": [[0, 1, 1]]}, {"wt": [1], "t": [1], "q": [[1, -1, 1]]}]}
    (tmp_path / "a.json").write_text(json.dumps(a))
    (tmp_path / "b.json").write_text(json.dumps(b))
    code, _, doc = call("mul", "--family", "A1", "--lhs", str(tmp_path / "a.json"), "--rhs", str(tmp_path / "b.json"))
    assert code == EXIT_OK
    validate(doc)
    # phi * xi = 1 - q t
    assert doc["value"]["terms"] == [{"wt": [0], "t": [0], "q": [[0, 1, 1]]}, {"wt": [0], "t": [1], "q": [[1, -1, 1]]}]
    code, _, doc = call("decompose", "--family", "A1", "--target", str(tmp_path / "b.json"))
    assert code == EXIT_OK and doc["result"]["feasible"]
    validate(doc)


def test_infeasible_decomposition_is_a_check_failure(tmp_path):
    (tmp_path / "t.json").write_text(json.dumps({"terms": [{"wt": [1], "t": [0], "q": [[0, 1, 1]]}]}))
    code, _, doc = call("decompose", "--family", "A1", "--target", str(tmp_path / "t.json"))
    assert code == EXIT_FAIL
    assert doc["result"]["obstruction"]["weight"] == [1]


def test_malformed_json_reports_location(tmp_path):
    (tmp_path / "bad.json").write_text('{"terms": [\n  {"wt": [1,}\n]}')
    code, _, doc = call("decompose", "--family", "A1", "--target", str(tmp_path / "bad.json"))
    assert code == EXIT_DOMAIN
    assert "line 2 column" in doc["error"]
    (tmp_path / "shape.json").write_text('{"terms": [{"wt": [1]}]}')
    code, _, doc = call("decompose", "--family", "A1", "--target", str(tmp_path / "shape.json"))
    assert code == EXIT_DOMAIN and "not a Heisenberg element" in doc["error"]


def test_bound_error_exit_code(tmp_path):
    (tmp_path / "t.json").write_text(json.dumps({"terms": [{"wt": [0], "t": [9], "q": [[0, 1, 1]]}]}))
    code, _, doc = call("decompose", "--family", "A1", "--target", str(tmp_path / "t.json"), "--box", "2")
    assert code == EXIT_UNSTABLE
    assert doc["error"].startswith("BoundError")


def test_unstable_order_exit_code():
    code, _, _ = call("order", "--family", "A1", "--kind", "semiinf", "--lhs", "1", "--rhs", "", "--window", "2")
    assert code == EXIT_UNSTABLE


def test_domain_errors_exit_two():
    assert call("character", "--family", "A2", "--weight", "1,-1")[0] == EXIT_DOMAIN
    assert call("toda", "--n", "12")[0] == EXIT_DOMAIN
    assert call("relations", "--family", "E8")[0] == EXIT_DOMAIN


def test_usage_errors_exit_64(capsys):
    for argv in (["bogus"], ["length"], ["toda", "--n", "x"]):
        with pytest.raises(SystemExit) as info:
            run(argv, io.StringIO())
        assert info.value.code == EXIT_USAGE
    assert run([], io.StringIO()) == EXIT_USAGE
    assert run(["length", "--type", "A", "--word", "1"], io.StringIO()) == EXIT_USAGE


def test_datum_from_environment_and_config(tmp_path, monkeypatch):
    monkeypatch.setenv("KDARBOUX_DATUM", "A1:1")
    _, _, doc = call("image", "--word", "xi1")
    assert doc["datum"] == {"family": [["A", 1]], "central": 1}
    (tmp_path / "cfg.json").write_text(json.dumps({"family": "B2", "central": 0, "seed": 3}))
    _, _, doc = call("suite", "--config", str(tmp_path / "cfg.json"))
    assert doc["datum"]["family"] == [["B", 2]] and doc["config"]["seed"] == 3


def test_json_output_file(tmp_path):
    path = tmp_path / "out.json"
    _, text, _ = call("toda", "--n", "2", "--json", str(path))
    assert path.read_text() == text
