import math

import pytest

from core.report import InequalityReport, json_float, make_report


def test_report_basic_fields():
    r = make_report(1.0, 2.0, p=1.0)
    assert r.margin == 1.0
    assert r.ratio == 0.5
    assert r.holds
    assert r.params == {"p": 1.0}


def test_report_tolerates_rounding_only():
    assert make_report(1.0 + 1e-12, 1.0).holds
    assert not make_report(1.0 + 1e-6, 1.0).holds


def test_report_reverse_relation():
    r = make_report(0.625, 0.5, ">=")
    assert r.margin == pytest.approx(0.125)
    assert r.holds
    assert r.params["relation"] == ">="
    assert not make_report(0.4, 0.5, ">=").holds


def test_report_unknown_relation():
    with pytest.raises(ValueError):
        make_report(1.0, 2.0, "<")


def test_report_infinite_sides():
    r = make_report(1.0, math.inf)
    assert r.holds
    assert r.to_dict()["rhs"] == "inf"
    assert not make_report(math.inf, 1.0).holds


def test_json_float():
    assert json_float(1.5) == 1.5
    assert json_float(math.inf) == "inf"
    assert json_float(-math.inf) == "-inf"
    assert json_float(math.nan) == "nan"


def test_relative_margin():
    assert make_report(1.0, 4.0).relative_margin == pytest.approx(0.75)
    assert InequalityReport(0.0, 0.0, 1.0, 0.0, True).relative_margin == 0.0
