# app.py
'''
Copyright 2025 HardyCheck developers

Command-line front end. Every command is a thin adapter from RunConfig params to one
library call; the report goes to stdout (or --out) as JSON or CSV.

Exit status: 0 success, 1 violated inequality, 2 input or domain error.
'''
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from core.continuous_hardy import METHODS, lemma31_residual, sharpness_sweep, theorem1_sides
from core.discrete_hardy import (
    epsilon_sides,
    holder_chain,
    lemma21_remainder,
    lemma21_sides,
    theorem2_sides,
    theorem4_sides,
)
from core.errors import DomainError, HardyCheckError
from core.fuzz import containment_corpus, continuous_corpus, discrete_corpus
from core.log import Log
from core.muckenhoupt import (
    interval_scan,
    pair_grid,
    prefix_scan,
    solve_p0,
    suffix_scan,
    theorem3_check,
    theorem_f_scan,
)
from core.numerics import DEFAULT_QUADRATURE, QuadratureConfig
from core.report import REPORT_CSV_FIELDS, InequalityReport, json_float
from core.storage import load_sequence, load_weight, write_output
from core.version import hcVersion
from utils.grids import DEFAULT_GRID, parse_floats, parse_grid, suffix_starts

__all__ = ["RunConfig", "COMMANDS", "run", "build_parser", "main"]

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_ERROR = 2

# An identity check passes when the residual is at quadrature scale.
LEMMA31_TOL = 1e-7

DISCRETE_CHECKS = ("theorem2", "lemma21", "lemma21-sides", "theorem4", "epsilon", "holder")

################################################################################################

@dataclass(slots=True, frozen=True)
class RunConfig:
    command: str
    input_path: Optional[str] = None
    params: Dict[str, Any] = field(default_factory=dict)
    output_format: Optional[str] = None
    seed: int = 0
    out_path: Optional[str] = None
    quadrature: QuadratureConfig = DEFAULT_QUADRATURE


@dataclass(slots=True, frozen=True)
class Result:
    """What a command hands back to run(): a JSON payload, CSV rows and a verdict."""
    payload: Dict[str, Any]
    header: List[str]
    rows: List[List[Any]]
    ok: bool = True


def _need(cfg: RunConfig, *keys: str):
    missing = [k for k in keys if cfg.params.get(k) is None]
    if missing:
        raise DomainError(f"{cfg.command} needs " + ", ".join(f"--{k}" for k in missing))
    return [cfg.params[k] for k in keys]


def _need_input(cfg: RunConfig) -> str:
    if not cfg.input_path:
        raise DomainError(f"{cfg.command} needs --in")
    return cfg.input_path


def _report_result(report: InequalityReport, **extra: Any) -> Result:
    payload = report.to_dict()
    payload.update(extra)
    return Result(payload, REPORT_CSV_FIELDS, [report.csv_row()], report.holds)

################################################################################################
# command adapters

def _verify_discrete(cfg: RunConfig) -> Result:
    seq = load_sequence(_need_input(cfg))
    (p,) = _need(cfg, "p")
    check = cfg.params.get("check") or "theorem2"
    q = cfg.params.get("q")
    q = p if q is None else q
    if check == "theorem2":
        return _report_result(theorem2_sides(seq, p, q), check=check)
    if check == "lemma21":
        return _report_result(lemma21_remainder(seq, p), check=check)
    if check == "lemma21-sides":
        return _report_result(lemma21_sides(seq, p), check=check)
    if check == "epsilon":
        (eps,) = _need(cfg, "eps")
        return _report_result(epsilon_sides(seq, p, eps), check=check)
    if check in ("theorem4", "holder"):
        q1, q2 = _need(cfg, "q1", "q2")
        if check == "theorem4":
            return _report_result(theorem4_sides(seq, p, q1, q2), check=check)
        chain = holder_chain(seq, p, q1, q2)
        payload = chain.to_dict()
        payload["check"] = check
        header = ["j_q1", "j_q2", "j_0", "bound", "holds"]
        return Result(payload, header, [[payload[k] for k in header]], chain.holds)
    raise DomainError(f"unknown check {check!r}, expected one of {DISCRETE_CHECKS}")


def _verify_continuous(cfg: RunConfig) -> Result:
    weight = load_weight(_need_input(cfg))
    (p,) = _need(cfg, "p")
    q = cfg.params.get("q")
    q = p if q is None else q
    a = cfg.params.get("a")
    a = weight.domain[0] if a is None else a
    b = cfg.params.get("b")
    b = (weight.domain[1] if weight.kind == "piecewise" else a + 1.0) if b is None else b
    method = cfg.params.get("method") or "auto"
    report = theorem1_sides(weight, (a, b), p, q, cfg.quadrature, method)
    return _report_result(report)


def _solve_p0(cfg: RunConfig) -> Result:
    q, M = _need(cfg, "q", "M")
    sol = solve_p0(q, M)
    payload = sol.to_dict()
    header = ["p0", "residual", "iterations", "bracket_width", "q", "M"]
    return Result(payload, header, [[payload[k] for k in header]])


def _grid(cfg: RunConfig) -> List[float]:
    return parse_grid(cfg.params.get("grid") or DEFAULT_GRID)


def _ap_scan(cfg: RunConfig) -> Result:
    weight = load_weight(_need_input(cfg))
    (p,) = _need(cfg, "p")
    side = cfg.params.get("side") or "prefix"
    grid = _grid(cfg)
    if side == "prefix":
        scan = prefix_scan(weight, p, grid)
    elif side == "suffix":
        scan = suffix_scan(weight, p, suffix_starts(grid, _right(weight)))
    elif side == "interval":
        scan = interval_scan(weight, p, pair_grid([weight.domain[0]] + grid))
    else:
        raise DomainError(f"unknown side {side!r}")
    return Result(scan.to_dict(), ["lo", "hi", "characteristic"], scan.csv_rows())


def _right(weight) -> float:
    return weight.domain[1] if weight.kind == "piecewise" else 1.0


def _theorem3(cfg: RunConfig) -> Result:
    weight = load_weight(_need_input(cfg))
    q, p = _need(cfg, "q", "p")
    side = cfg.params.get("side") or "prefix"
    grid = _grid(cfg)
    if side == "suffix":
        grid = suffix_starts(grid, _right(weight))
    return _report_result(theorem3_check(weight, q, p, grid, side))


def _sharpness_sweep(cfg: RunConfig) -> Result:
    p, d = _need(cfg, "p", "d")
    q = cfg.params.get("q")
    q = p if q is None else q
    points = sharpness_sweep(p, q, parse_floats(d) if isinstance(d, str) else d)
    payload = {"p": p, "q": q, "points": [pt.to_dict() for pt in points]}
    return Result(payload, ["d", "lhs", "rhs", "ratio"], [pt.csv_row() for pt in points])


def _fuzz(cfg: RunConfig) -> Result:
    sequences = int(cfg.params.get("sequences", 10_000) or 0)
    weights = int(cfg.params.get("weights", 1_000) or 0)
    monotone = int(cfg.params.get("monotone", 0) or 0)
    summaries = []
    if sequences:
        summaries.extend(discrete_corpus(cfg.seed, sequences))
    if weights:
        summaries.append(continuous_corpus(cfg.seed, weights, cfg=cfg.quadrature))
    if monotone:
        summaries.append(containment_corpus(cfg.seed, monotone))
    rows = [s.to_dict() for s in summaries]
    header = ["name", "cases", "failures", "min_relative_margin"]
    ok = all(s.failures == 0 for s in summaries)
    margin = min((s.min_relative_margin for s in summaries), default=math.inf)
    payload = {"seed": cfg.seed, "summaries": rows, "min_relative_margin": json_float(margin)}
    return Result(payload, header, [[r[k] for k in header] for r in rows], ok)


def _lemma31(cfg: RunConfig) -> Result:
    weight = load_weight(_need_input(cfg))
    (a,) = _need(cfg, "a")
    u = cfg.params.get("u")
    u = 1.0 if u is None else u
    residual = lemma31_residual(weight, a, u, cfg.quadrature)
    holds = residual <= LEMMA31_TOL
    payload = {"residual": residual, "a": a, "u": u, "holds": holds}
    return Result(payload, ["a", "u", "residual", "holds"], [[a, u, residual, holds]], holds)


def _theorem_f(cfg: RunConfig) -> Result:
    weight = load_weight(_need_input(cfg))
    (p,) = _need(cfg, "p")
    points = parse_grid(cfg.params.get("grid") or "lin:100")
    rep = theorem_f_scan(weight, p, points, _right(weight))
    payload = rep.to_dict()
    header = ["p", "prefix_sup", "suffix_sup", "all_sup", "ratio", "monotone", "intervals"]
    return Result(payload, header, [[payload[k] for k in header]], rep.finite)


# command -> (adapter, default output format)
COMMANDS: Dict[str, Tuple[Callable[[RunConfig], Result], str]] = {
    "verify-discrete": (_verify_discrete, "json"),
    "verify-continuous": (_verify_continuous, "json"),
    "solve-p0": (_solve_p0, "json"),
    "ap-scan": (_ap_scan, "json"),
    "theorem3": (_theorem3, "json"),
    "sharpness-sweep": (_sharpness_sweep, "csv"),
    "fuzz": (_fuzz, "json"),
    "lemma31": (_lemma31, "json"),
    "theorem-f": (_theorem_f, "json"),
}

################################################################################################

def _render(result: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result.payload, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(result.header)
    writer.writerows(result.rows)
    return buf.getvalue()


def run(cfg: RunConfig) -> Tuple[int, str]:
    """Execute one command; returns (exit status, serialized report)."""
    if cfg.command not in COMMANDS:
        raise DomainError(f"unknown command {cfg.command!r}")
    adapter, default_fmt = COMMANDS[cfg.command]
    fmt = cfg.output_format or default_fmt
    if fmt not in ("json", "csv"):
        raise DomainError(f"unknown output format {fmt!r}")
    Log.debug(f"run {cfg.command} params={cfg.params} input={cfg.input_path}", 1)
    result = adapter(cfg)
    status = EXIT_OK if result.ok else EXIT_VIOLATED
    Log.debug(f"{cfg.command}: exit status {status}", 1)
    return status, _render(result, fmt)

################################################################################################
# argument parsing

def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("json", "csv"),
                        help="Report format (default: json; csv for sharpness-sweep)")
    common.add_argument("--out", dest="out_path", help="Write the report here instead of stdout")
    common.add_argument("--tol", type=float,
                        help="Absolute and relative quadrature tolerance")
    common.add_argument("--verbosity", type=int, default=0,
                        help="Set verbosity level (0=quiet, 1=normal, 2=verbose, 3+=debug)")
    common.add_argument("--log-file", help="Write the debug log to this file when done")
    common.add_argument("--stdexp", action="store_true",
                        help="Let exceptions propagate with a traceback instead of exiting 2")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hardycheck",
        description="Sharp Hardy inequalities with negative exponents and A_p self-improvement",
    )
    parser.add_argument("--version", action="version", version=f"HardyCheck {hcVersion}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_common_options()]

    p = sub.add_parser("verify-discrete", parents=common, help="Discrete Hardy-type inequalities")
    p.add_argument("--in", dest="input_path", required=True, help="Sequence JSON {a, lam}")
    p.add_argument("--check", choices=DISCRETE_CHECKS, default="theorem2")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float)
    p.add_argument("--q1", type=float)
    p.add_argument("--q2", type=float)
    p.add_argument("--eps", type=float)

    p = sub.add_parser("verify-continuous", parents=common, help="Continuous Hardy inequality")
    p.add_argument("--in", dest="input_path", required=True, help="Weight JSON")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, help="Defaults to p")
    p.add_argument("--a", type=float, help="Interval start (default: domain start)")
    p.add_argument("--b", type=float, help="Interval end (default: domain end, or a+1)")
    p.add_argument("--method", choices=METHODS, default="auto")

    p = sub.add_parser("solve-p0", parents=common, help="Critical exponent p0(q, M)")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--M", type=float, required=True)

    p = sub.add_parser("ap-scan", parents=common, help="A_p characteristics over a grid")
    p.add_argument("--in", dest="input_path", required=True, help="Weight JSON")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--grid", default=DEFAULT_GRID,
                   help="geom:n, lin:n or a comma list (suffix: lengths from the right end)")
    p.add_argument("--side", choices=("prefix", "suffix", "interval"), default="prefix")

    p = sub.add_parser("theorem3", parents=common, help="Self-improvement of one-sided A_q")
    p.add_argument("--in", dest="input_path", required=True, help="Weight JSON")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--grid", default=DEFAULT_GRID,
                   help="geom:n, lin:n or a comma list: right ends t (prefix), "
                        "lengths measured back from the right end (suffix)")
    p.add_argument("--side", choices=("prefix", "suffix"), default="prefix")

    p = sub.add_parser("sharpness-sweep", parents=common, help="Ratios for f(x) = x^d")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, help="Defaults to p")
    p.add_argument("--d", required=True, help="Comma list of exponents d")

    p = sub.add_parser("fuzz", parents=common, help="Seeded property corpora")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sequences", type=int, default=10_000)
    p.add_argument("--weights", type=int, default=1_000)
    p.add_argument("--monotone", type=int, default=0)

    p = sub.add_parser("lemma31", parents=common, help="Integration-by-parts identity residual")
    p.add_argument("--in", dest="input_path", required=True, help="Weight JSON for g")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--u", type=float, default=1.0)

    p = sub.add_parser("theorem-f", parents=common, help="Prefix/suffix vs all-interval scan")
    p.add_argument("--in", dest="input_path", required=True, help="Weight JSON")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--grid", default="lin:100", help="Interval endpoints")

    return parser


_GLOBAL = {"command", "input_path", "output_format", "out_path", "tol", "verbosity",
           "log_file", "stdexp", "seed"}


def config_from_args(args: argparse.Namespace) -> RunConfig:
    params = {k: v for k, v in vars(args).items() if k not in _GLOBAL}
    quadrature = DEFAULT_QUADRATURE
    if args.tol is not None:
        quadrature = dataclasses.replace(DEFAULT_QUADRATURE, abs_tol=args.tol, rel_tol=args.tol)
    return RunConfig(
        command=args.command,
        input_path=getattr(args, "input_path", None),
        params=params,
        output_format=args.output_format,
        seed=getattr(args, "seed", 0),
        out_path=args.out_path,
        quadrature=quadrature,
    )


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)

    Log.set_verbosity(args.verbosity)
    if args.verbosity > 0:
        Log.set_stream(stderr)
    try:
        try:
            cfg = config_from_args(args)
            status, text = run(cfg)
        except HardyCheckError as e:
            if args.stdexp:
                raise
            Log.debug(f"!ERROR! {type(e).__name__}: {e}", 0)
            stderr.write(f"hardycheck: error: {e}\n")
            return EXIT_ERROR
        write_output(text, cfg.out_path, stdout)
        return status
    finally:
        if args.log_file:
            Log.write_to_file(args.log_file)
        Log.set_stream(None)
