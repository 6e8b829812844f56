import io
import json

import pytest

from core.discrete_hardy import WeightedSequence
from core.errors import DomainError, ParseError
from core.storage import atomic_write_text, load_sequence, load_weight, read_json, write_output
from core.weights import PiecewiseConstantWeight, PowerWeight


def _dump(path, obj):
    path.write_text(json.dumps(obj), encoding="utf-8")
    return path


def test_read_json_errors(tmp_path):
    with pytest.raises(ParseError):
        read_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(ParseError):
        read_json(bad)


def test_load_weight(tmp_path):
    power = _dump(tmp_path / "w.json", {"kind": "power", "a": 0.5})
    assert load_weight(power) == PowerWeight(0.5)
    wrapped = _dump(tmp_path / "wrapped.json",
                    {"weight": {"kind": "piecewise", "breakpoints": [0, 1, 2], "values": [1, 3]}})
    assert load_weight(wrapped) == PiecewiseConstantWeight((0.0, 1.0, 2.0), (1.0, 3.0))


def test_load_weight_domain_error(tmp_path):
    path = _dump(tmp_path / "w.json", {"kind": "piecewise", "breakpoints": [0, 1], "values": [-1]})
    with pytest.raises(DomainError):
        load_weight(path)


def test_load_sequence(tmp_path):
    path = _dump(tmp_path / "s.json", {"a": [1, 2, 3], "lam": [1, 1, 2]})
    assert load_sequence(path) == WeightedSequence((1.0, 2.0, 3.0), (1.0, 1.0, 2.0))
    with pytest.raises(ParseError):
        load_sequence(_dump(tmp_path / "t.json", [1, 2, 3]))


def test_atomic_write_text(tmp_path):
    target = tmp_path / "out" / "report.json"
    atomic_write_text(target, "first\n")
    atomic_write_text(target, "second\n")
    assert target.read_text(encoding="utf-8") == "second\n"
    assert sorted(p.name for p in target.parent.iterdir()) == ["report.json"]


def test_write_output_stream_or_file(tmp_path):
    buf = io.StringIO()
    write_output("abc\n", None, buf)
    assert buf.getvalue() == "abc\n"
    write_output("xyz\n", tmp_path / "r.csv", buf)
    assert buf.getvalue() == "abc\n"
    assert (tmp_path / "r.csv").read_text(encoding="utf-8") == "xyz\n"
