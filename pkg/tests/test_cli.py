import json
from pathlib import Path

import pytest

from higherlim import cli
from higherlim.diagram import higher_limits
from higherlim.errors import InputError
from higherlim.exactla import GF
from higherlim.instance import dump_instance, load_instance, parse_instance
from higherlim.randgen import random_instance

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_circle_both(capsys):
    code, out, _ = run(capsys, "compute", INSTANCES / "circle.json", "--method", "both")
    assert code == 0
    assert out.splitlines()[0] == "H^0=1 H^1=1; backends agree"


def test_compute_zero_chain(capsys):
    code, out, _ = run(capsys, "compute", INSTANCES / "chain3_zero.json", "--method", "fibrant")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "H^0=1"
    top = next(line for line in lines if line.startswith("2 "))
    assert "Truncated" in top and "[3, 2]" in top


def test_compute_json_and_at(capsys):
    code, out, _ = run(capsys, "compute", INSTANCES / "circle.json", "--at", "e1", "--json", "--method", "both")
    assert code == 0
    payload = json.loads(out)
    assert payload["fibrant"] == payload["oracle"] == [2]


def test_label_figure(capsys, tmp_path):
    dot = tmp_path / "fig.dot"
    code, out, _ = run(capsys, "label", INSTANCES / "fig_labelling.json", "--dot", dot)
    assert code == 0
    assert out.splitlines()[-1] == "sup B = 2"
    assert dot.read_text().startswith("digraph")
    code, out, _ = run(capsys, "label", INSTANCES / "fig_labelling.json", "--json")
    assert json.loads(out)["labels"] == {"p0": 0, "p1": 1, "p2": 1, "p3": 1, "p4": 1, "p5": 1,
                                         "p6": 1, "p7": 2, "p8": 2}


def test_bounds_with_inductive(capsys):
    code, out, _ = run(capsys, "bounds", INSTANCES / "sphere_square.json", "--inductive", "2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["sup_B"] == 2
    assert payload["inductive"]["holds"] is True
    assert payload["vanishing_degree"] == 2


def test_check_is_reproducible(capsys):
    a = run(capsys, "check", "--trials", "6", "--seed", "5", "--max-elements", "6", "--json")
    b = run(capsys, "check", "--trials", "6", "--seed", "5", "--max-elements", "6", "--json")
    assert a[0] == b[0] == 0
    assert a[1] == b[1]
    assert json.loads(a[1])["ok"] is True


def test_random_round_trip(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "random", "--seed", "9", "--field", "Fp:5", "-o", out)
    assert code == 0
    _, _, F = load_instance(out)
    assert F == random_instance(9, field=GF(5))
    assert parse_instance(dump_instance(F))[2] == F
    code, _, _ = run(capsys, "random", "--seed", "2", "--tree", "-o", out)
    assert code == 0
    _, _, T = load_instance(out)
    assert len(higher_limits(T)) <= 2


def test_bad_input_exits_one(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"poset": {"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]}}))
    code, _, err = run(capsys, "label", bad)
    assert code == 1
    assert "error" in err
    code, _, _ = run(capsys, "compute", tmp_path / "missing.json")
    assert code == 1
    code, _, _ = run(capsys, "compute", INSTANCES / "fig_labelling.json")
    assert code == 1


def test_backend_disagreement_exits_two(capsys, monkeypatch):
    monkeypatch.setattr(cli, "oracle_higher_limits", lambda F, at=None: [7])
    code, _, err = run(capsys, "compute", INSTANCES / "circle.json", "--method", "both")
    assert code == 2
    assert "invariant" in err


@pytest.mark.parametrize("obj", [
    {"poset": {"elements": ["a"], "covers": []}, "extra": 1},
    {"field": "Fp:4", "poset": {"elements": ["a"], "covers": []}},
    {"field": "Fp:5", "poset": {"elements": ["a", "b"], "covers": [["a", "b"]]},
     "functor": {"dims": {"a": 1, "b": 1}, "maps": {"a<b": [[7]]}}},
    {"poset": {"elements": ["a", "b"], "covers": [["a", "b"]]},
     "functor": {"dims": {"a": 1, "b": 1}, "maps": {"a<b": [[1, 2]]}}},
    {"poset": {"elements": ["a", "b"], "covers": [["a", "b"]]},
     "functor": {"dims": {"a": 1, "b": 1}, "maps": {"b<a": [[1]]}}},
])
def test_malformed_instances(obj):
    with pytest.raises(InputError):
        parse_instance(obj)


def test_rational_entries_round_trip():
    obj = {"poset": {"elements": ["a", "b"], "covers": [["a", "b"]]},
           "functor": {"dims": {"a": 1, "b": 2}, "maps": {"a<b": [["-1/2", "3"]]}}}
    F = parse_instance(obj)[2]
    assert dump_instance(F)["functor"]["maps"] == {"a<b": [["-1/2", "3"]]}
