import csv
import io
import json
import math

import pytest

from app import EXIT_ERROR, EXIT_OK, main
from core.errors import InvalidExponents


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = main(list(argv), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


@pytest.fixture
def write_json(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj), encoding="utf-8")
        return str(path)
    return write


@pytest.fixture
def sqrt_weight(write_json):
    return write_json("sqrt.json", {"kind": "power", "a": 0.5, "origin": 0.0})


@pytest.fixture
def step_up(write_json):
    return write_json("up.json", {"kind": "piecewise", "breakpoints": [0, 0.5, 1], "values": [1, 2]})


@pytest.fixture
def step_down(write_json):
    return write_json("down.json", {"kind": "piecewise", "breakpoints": [0, 0.5, 1], "values": [2, 1]})

# ---------------------------------------------------------------- individual commands

def test_solve_p0():
    status, out, _ = run_cli("solve-p0", "--q", "2", "--M", repr(4.0 / 3.0))
    assert status == EXIT_OK
    payload = json.loads(out)
    assert payload["p0"] == pytest.approx(1.5, abs=1e-12)
    assert payload["iterations"] > 0
    assert payload["bracket_width"] <= 1e-15


def test_verify_discrete(write_json):
    seq = write_json("seq.json", {"a": [1, 2], "lam": [1, 1]})
    status, out, _ = run_cli("verify-discrete", "--in", seq, "--p", "2", "--q", "2")
    assert status == EXIT_OK
    payload = json.loads(out)
    assert payload["lhs"] == pytest.approx(1.0 + 1.5 ** -2)
    assert payload["rhs"] == pytest.approx(2.8125)
    assert payload["holds"] is True
    assert payload["check"] == "theorem2"


def test_verify_discrete_other_checks(write_json):
    seq = write_json("seq.json", {"a": [1, 3]})
    status, out, _ = run_cli("verify-discrete", "--in", seq, "--check", "lemma21", "--p", "1")
    assert status == EXIT_OK
    assert json.loads(out)["margin"] == pytest.approx(0.125)

    status, out, _ = run_cli("verify-discrete", "--in", seq, "--check", "holder",
                             "--p", "2", "--q1", "0.5", "--q2", "1.5")
    assert status == EXIT_OK
    assert json.loads(out)["holds"] is True

    status, out, _ = run_cli("verify-discrete", "--in", seq, "--check", "epsilon",
                             "--p", "2", "--eps", "0.5", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["lhs", "rhs", "ratio", "margin", "holds"]
    assert rows[1][-1] == "True"


def test_verify_discrete_missing_parameter(write_json):
    seq = write_json("seq.json", {"a": [1, 3]})
    status, out, err = run_cli("verify-discrete", "--in", seq, "--check", "theorem4", "--p", "2")
    assert status == EXIT_ERROR
    assert out == ""
    assert "--q1, --q2" in err


def test_verify_continuous(write_json):
    linear = write_json("linear.json", {"kind": "power", "a": 1.0})
    status, out, _ = run_cli("verify-continuous", "--in", linear, "--p", "0.5")
    assert status == EXIT_OK
    payload = json.loads(out)
    assert payload["lhs"] == pytest.approx(2.0 * math.sqrt(2.0))
    assert payload["rhs"] == pytest.approx(2.0 * math.sqrt(3.0))
    assert payload["params"]["b"] == 1.0

    status, out, _ = run_cli("verify-continuous", "--in", linear, "--p", "0.5",
                             "--method", "quadrature", "--tol", "1e-11")
    assert status == EXIT_OK
    assert json.loads(out)["lhs"] == pytest.approx(2.0 * math.sqrt(2.0), rel=1e-8)


def test_verify_continuous_piecewise_defaults_to_domain(step_up):
    status, out, _ = run_cli("verify-continuous", "--in", step_up, "--p", "2", "--q", "1")
    assert status == EXIT_OK
    assert json.loads(out)["params"]["b"] == 1.0


def test_sharpness_sweep_csv():
    status, out, _ = run_cli("sharpness-sweep", "--p", "2", "--q", "2", "--d", "0.3,0.49")
    assert status == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["d", "lhs", "rhs", "ratio"]
    assert len(rows) == 3
    assert float(rows[2][3]) == pytest.approx((1.49 / 1.5) ** 2, abs=1e-9)


def test_sharpness_sweep_json():
    status, out, _ = run_cli("sharpness-sweep", "--p", "1", "--d", "0.5", "--format", "json")
    payload = json.loads(out)
    assert payload["q"] == 1.0
    assert payload["points"][0]["ratio"] == pytest.approx(0.75)


def test_ap_scan_prefix_divergent(write_json):
    linear = write_json("linear.json", {"kind": "power", "a": 1.0})
    status, out, _ = run_cli("ap-scan", "--in", linear, "--p", "2", "--grid", "0.5,1")
    assert status == EXIT_OK
    payload = json.loads(out)
    assert payload["characteristics"] == ["inf", "inf"]
    assert payload["sup"] == "inf"


def test_ap_scan_suffix_and_interval(step_down):
    status, out, _ = run_cli("ap-scan", "--in", step_down, "--p", "2", "--side", "suffix",
                             "--grid", "0.5,1")
    assert status == EXIT_OK
    payload = json.loads(out)
    # lengths 1 and 0.5 from the right end
    assert payload["grid"] == [0.0, 0.5]
    assert payload["characteristics"] == pytest.approx([1.125, 1.0])

    status, out, _ = run_cli("ap-scan", "--in", step_down, "--p", "2", "--side", "interval",
                             "--grid", "0.5,1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["lo", "hi", "characteristic"]
    assert len(rows) == 1 + 3


def test_theorem3(sqrt_weight):
    status, out, _ = run_cli("theorem3", "--in", sqrt_weight, "--q", "2", "--p", "1.8",
                             "--grid", "geom:20")
    assert status == EXIT_OK
    payload = json.loads(out)
    assert payload["rhs"] == pytest.approx(1.7767, abs=1e-4)
    assert payload["params"]["p0"] == pytest.approx(1.5, abs=1e-12)

    status, out, err = run_cli("theorem3", "--in", sqrt_weight, "--q", "2", "--p", "1.5")
    assert status == EXIT_ERROR
    assert "p0" in err


def test_theorem3_suffix(step_down):
    status, out, _ = run_cli("theorem3", "--in", step_down, "--q", "2", "--p", "1.6",
                             "--side", "suffix", "--grid", "lin:4")
    assert status == EXIT_OK
    assert json.loads(out)["params"]["M"] == pytest.approx(1.125)


def test_theorem3_suffix_grid_is_lengths(step_down):
    # length 0.25 from the right end: only the cell with value 1 is seen
    status, out, _ = run_cli("theorem3", "--in", step_down, "--q", "2", "--p", "1.6",
                             "--side", "suffix", "--grid", "0.25")
    assert status == EXIT_OK
    payload = json.loads(out)
    assert payload["lhs"] == pytest.approx(1.0)
    assert payload["params"]["M"] == pytest.approx(1.125)


@pytest.mark.parametrize("command", ["theorem3", "ap-scan"])
def test_grid_help_explains_suffix_lengths(capsys, command):
    with pytest.raises(SystemExit) as exc:
        main([command, "--help"])
    assert exc.value.code == 0
    text = " ".join(capsys.readouterr().out.split())
    assert "from the right end" in text


def test_lemma31(write_json):
    g = write_json("g.json", {"kind": "power", "a": 1.0})
    status, out, _ = run_cli("lemma31", "--in", g, "--a", "2", "--u", "0.5")
    assert status == EXIT_OK
    payload = json.loads(out)
    assert payload["holds"] is True
    assert payload["residual"] <= 1e-7


def test_theorem_f(step_up):
    status, out, _ = run_cli("theorem-f", "--in", step_up, "--p", "2", "--grid", "lin:10")
    assert status == EXIT_OK
    payload = json.loads(out)
    assert payload["finite"] is True
    assert payload["ratio"] >= 1.0 - 1e-12

# ---------------------------------------------------------------- fuzz

def test_fuzz_is_reproducible():
    args = ("fuzz", "--seed", "7", "--sequences", "20", "--weights", "3", "--monotone", "2")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first[0] == EXIT_OK
    assert first[1] == second[1]
    payload = json.loads(first[1])
    assert payload["seed"] == 7
    assert [s["name"] for s in payload["summaries"]] == [
        "theorem2", "lemma21", "theorem4", "epsilon", "theorem1", "theorem3"]


def test_fuzz_sequences_only():
    status, out, _ = run_cli("fuzz", "--sequences", "5", "--weights", "0", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert status == EXIT_OK
    assert rows[0] == ["name", "cases", "failures", "min_relative_margin"]
    assert [r[1] for r in rows[1:]] == ["5"] * 4

# ---------------------------------------------------------------- errors and plumbing

def test_error_exit_codes(tmp_path, write_json):
    seq = write_json("seq.json", {"a": [1, 2]})
    status, _, err = run_cli("verify-discrete", "--in", seq, "--p", "1", "--q", "2")
    assert status == EXIT_ERROR
    assert err.startswith("hardycheck: error:")

    status, _, _ = run_cli("verify-discrete", "--in", str(tmp_path / "nope.json"), "--p", "1")
    assert status == EXIT_ERROR

    status, _, _ = run_cli("solve-p0", "--q", "0.5", "--M", "2")
    assert status == EXIT_ERROR

    status, _, _ = run_cli("verify-continuous", "--in", write_json("bad.json", {"kind": "power", "a": -2}),
                           "--p", "1")
    assert status == EXIT_ERROR


def test_stdexp_propagates(write_json):
    seq = write_json("seq.json", {"a": [1, 2]})
    with pytest.raises(InvalidExponents):
        run_cli("verify-discrete", "--in", seq, "--p", "1", "--q", "2", "--stdexp")


@pytest.mark.parametrize("argv", [
    ["verify-discrete", "--p", "1"],
    ["frobnicate"],
    ["solve-p0", "--q", "two", "--M", "1"],
    [],
])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        run_cli(*argv)
    assert exc.value.code == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.startswith("HardyCheck ")


def test_out_file(tmp_path):
    target = tmp_path / "reports" / "p0.json"
    status, out, _ = run_cli("solve-p0", "--q", "2", "--M", "1", "--out", str(target))
    assert status == EXIT_OK
    assert out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["p0"] == 1.0


def test_log_file_and_verbosity(tmp_path, write_json):
    seq = write_json("seq.json", {"a": [1, 2, 3]})
    log_path = tmp_path / "run.log"
    status, _, err = run_cli("verify-discrete", "--in", seq, "--p", "1",
                             "--verbosity", "2", "--log-file", str(log_path))
    assert status == EXIT_OK
    assert "theorem2_sides" in err
    text = log_path.read_text(encoding="utf-8")
    assert "Begin HardyCheck Log" in text or "Log cleared" in text
    assert "theorem2_sides" in text
