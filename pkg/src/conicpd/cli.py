"""Command-line driver.

Every subcommand resolves its configuration (flags > config file > defaults),
runs the corresponding library routine, and emits either newline-delimited
JSON records or an RFC-4180-style CSV.  The first line always records the
fully resolved configuration and the tool version, and nothing time- or
host-dependent is ever written, so identical configurations produce
byte-identical output.

Exit codes: 0 success, 2 validation/configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .densities import PartitionSpec, box_mass_L
from .errors import DomainError, InfiniteVarianceError, NumericalError
from .estimation import stream_counts
from .gaussian import charfun_gap_rows
from .laplace import (
    analytic_laplace,
    mc_laplace,
    quasi_invariance_check,
    weighted_box_mass,
)
from .mellin import L_limit_study, RadiusSchedule, divergence_experiment, solve_saddle
from .processes import (
    RngStream,
    sample_dirichlet_process,
    sample_gamma_process,
    series_record,
    weight_as_lebesgue,
)
from .stepfn import StepFunction


def parse_step_function(text: str) -> StepFunction:
    """Parse "v1@b0:b1,v2@b1:b2,..." into a StepFunction on [0, 1).

    Segments may be given in any order but must tile [0, 1) exactly; errors
    name the offending segment.
    """
    if not isinstance(text, str) or not text.strip():
        raise DomainError("empty step-function text")
    pieces = []
    for raw in text.split(","):
        seg = raw.strip()
        try:
            value_part, span = seg.split("@")
            lo_part, hi_part = span.split(":")
            value, lo, hi = float(value_part), float(lo_part), float(hi_part)
        except (ValueError, TypeError):
            raise DomainError(f"malformed step segment '{seg}' (expected value@lo:hi)") from None
        if not all(map(math.isfinite, (value, lo, hi))):
            raise DomainError(f"non-finite number in step segment '{seg}'")
        if value <= 0.0:
            raise DomainError(f"step segment '{seg}' has a non-positive value")
        if not (0.0 <= lo < hi <= 1.0):
            raise DomainError(f"step segment '{seg}' does not sit inside [0, 1)")
        pieces.append((lo, hi, value, seg))
    pieces.sort(key=lambda p: p[0])
    cursor = 0.0
    for lo, hi, _value, seg in pieces:
        if lo != cursor:
            kind = "overlaps" if lo < cursor else "leaves a gap before"
            raise DomainError(f"step segment '{seg}' {kind} position {cursor}")
        cursor = hi
    if cursor != 1.0:
        raise DomainError("step segments do not reach the right endpoint 1")
    breakpoints = np.array([0.0] + [p[1] for p in pieces])
    values = np.array([p[2] for p in pieces])
    return StepFunction(breakpoints, values)


def _parse_float_list(text: str, name: str) -> list[float]:
    try:
        vals = [float(v) for v in str(text).split(",") if v.strip() != ""]
    except ValueError:
        raise DomainError(f"{name} must be a comma-separated list of numbers") from None
    if not vals:
        raise DomainError(f"{name} must not be empty")
    return vals


def _parse_int_list(text: str, name: str) -> list[int]:
    vals = _parse_float_list(text, name)
    out = [int(v) for v in vals]
    if any(o != v for o, v in zip(out, vals)):
        raise DomainError(f"{name} must contain integers")
    return out


_COMMON = {
    "seed": (int, 0), "streams": (int, 1), "out": (str, None),
    "format": (str, None), "config": (str, None),
}

_DEFAULTS = {
    "sample": {"theta": 1.0, "eps": 1e-10, "samples": 5, "process": "gamma", "format": "json"},
    "laplace": {"theta": 1.0, "eps": 1e-10, "samples": 100_000, "f": None, "format": "json"},
    "invariance": {"theta": 1.0, "eps": 1e-10, "samples": 50_000, "pairs": 20,
                   "a": None, "f": None, "format": "json"},
    "partition-sums": {"eps": 1e-10, "samples": 100_000, "weights": None, "b": "1",
                       "format": "json"},
    "mellin": {"lam": 1.0, "nmax": 40, "nmin": 2, "format": "csv"},
    "saddle": {"lam": 1.0, "format": "json"},
    "mp-demo": {"n": "5,10,20,50,100,200", "smax": 3.0, "spoints": 31, "samples": 0,
                "format": "csv"},
    "divergence": {"lam": 1.0, "schedule": "constant", "scale": 1.0, "nmax": 40,
                   "nmin": 2, "format": "csv"},
    "box-mass": {"weights": None, "b": "1", "format": "json"},
}

_TYPES = {
    "theta": float, "eps": float, "samples": int, "seed": int, "streams": int,
    "out": str, "format": str, "f": str, "a": str, "pairs": int, "weights": str,
    "b": str, "lam": float, "nmax": int, "nmin": int, "n": str, "smax": float,
    "spoints": int, "scale": float, "process": str, "schedule": str,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conicpd",
        description="Samplers, transforms and asymptotics for sigma-finite "
                    "measures on the cone of discrete measures.",
    )
    sub = parser.add_subparsers(dest="command")

    def add(name, help_text, extra):
        p = sub.add_parser(name, help=help_text)
        for flag, dest, kind, help_str in extra:
            p.add_argument(flag, dest=dest, type=kind, default=None, help=help_str)
        p.add_argument("--seed", type=int, default=None, help="base RNG seed (default 0)")
        p.add_argument("--streams", type=int, default=None, help="independent stream count")
        p.add_argument("--out", type=str, default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None,
                       help="output format")
        p.add_argument("--config", type=str, default=None,
                       help="key=value file supplying defaults (flags win)")
        return p

    add("sample", "draw weighted atom series", [
        ("--theta", "theta", float, "total weight theta > 0"),
        ("--eps", "eps", float, "stick-breaking truncation threshold"),
        ("--samples", "samples", int, "number of draws"),
        ("--process", "process", str, "dirichlet | gamma | lebesgue"),
    ])
    add("laplace", "Monte Carlo vs analytic Laplace transform", [
        ("--theta", "theta", float, "total weight theta > 0"),
        ("--eps", "eps", float, "stick-breaking truncation threshold"),
        ("--samples", "samples", int, "Monte Carlo sample count"),
        ("--f", "f", str, "step function, e.g. 2@0:1 or 2@0:0.5,0.5@0.5:1"),
    ])
    add("invariance", "multiplicator quasi-invariance identities", [
        ("--theta", "theta", float, "total weight theta > 0"),
        ("--eps", "eps", float, "stick-breaking truncation threshold"),
        ("--samples", "samples", int, "Monte Carlo samples per pair"),
        ("--pairs", "pairs", int, "number of random (a, f) pairs"),
        ("--a", "a", str, "explicit multiplicator step function"),
        ("--f", "f", str, "explicit test step function"),
    ])
    add("partition-sums", "weighted box masses of partition sums", [
        ("--weights", "weights", str, "comma list of part weights, e.g. 0.5,1.5"),
        ("--b", "b", str, "comma list of box edges"),
        ("--eps", "eps", float, "stick-breaking truncation threshold"),
        ("--samples", "samples", int, "Monte Carlo sample count"),
    ])
    add("mellin", "limit study of (log F_n)/n", [
        ("--lambda", "lam", float, "argument lambda > 0"),
        ("--nmax", "nmax", int, "largest n in the table"),
        ("--nmin", "nmin", int, "smallest n in the table"),
    ])
    add("saddle", "saddle point and rate L(lambda)", [
        ("--lambda", "lam", float, "argument lambda > 0"),
    ])
    add("mp-demo", "sphere vs Gaussian characteristic functions", [
        ("--n", "n", str, "comma list of dimensions"),
        ("--smax", "smax", float, "right end of the s grid"),
        ("--spoints", "spoints", int, "number of s grid points"),
        ("--samples", "samples", int, "Monte Carlo samples per point (0 = skip)"),
    ])
    add("divergence", "non-convergence along radius schedules", [
        ("--lambda", "lam", float, "constant test value lambda > 0"),
        ("--schedule", "schedule", str, "constant | sqrt_n"),
        ("--scale", "scale", float, "radius scale"),
        ("--nmax", "nmax", int, "largest n"),
        ("--nmin", "nmin", int, "smallest n"),
    ])
    add("box-mass", "exact sigma-finite box masses", [
        ("--weights", "weights", str, "comma list of part weights"),
        ("--b", "b", str, "comma list of box edges"),
    ])
    return parser


def _read_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read config file {path}: {exc}") from None
    out = {}
    for idx, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise DomainError(f"config line {idx} is not key=value: '{line}'")
        key, value = (part.strip() for part in line.split("=", 1))
        dest = "lam" if key == "lambda" else key
        if dest not in _TYPES:
            raise DomainError(f"config line {idx} has unknown key '{key}'")
        try:
            out[dest] = _TYPES[dest](value)
        except ValueError:
            raise DomainError(f"config line {idx}: cannot parse '{value}' for '{key}'") from None
    return out


def resolve_config(args: argparse.Namespace) -> dict:
    defaults = dict(_DEFAULTS[args.command])
    for key, (_kind, fallback) in _COMMON.items():
        defaults.setdefault(key, fallback)
    file_values = _read_config_file(args.config) if args.config else {}
    resolved = {}
    for key, fallback in defaults.items():
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            resolved[key] = flag_value
        elif key in file_values:
            resolved[key] = file_values[key]
        else:
            resolved[key] = fallback
    resolved["command"] = args.command
    if resolved["seed"] < 0 or resolved["streams"] < 1:
        raise DomainError("seed must be >= 0 and streams >= 1")
    return resolved


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(cfg: dict, columns: list[str], records: list[dict]) -> str:
    header = {k: v for k, v in cfg.items() if k not in ("out", "config")}
    meta = json.dumps({"config": header, "version": __version__}, sort_keys=True)
    if cfg["format"] == "json":
        lines = [meta]
        lines += [json.dumps(r, sort_keys=True) for r in records]
    else:
        lines = ["# " + meta, ",".join(columns)]
        lines += [",".join(_fmt(r.get(c)) for c in columns) for r in records]
    return "\n".join(lines) + "\n"


def _write(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _run_sample(cfg):
    if cfg["process"] not in ("dirichlet", "gamma", "lebesgue"):
        raise DomainError("process must be dirichlet, gamma or lebesgue")
    records = []
    counts = stream_counts(cfg["samples"], cfg["streams"])
    draw_index = 0
    for stream, count in enumerate(counts):
        rng = RngStream(cfg["seed"], stream)
        gen = rng.generator()
        for _ in range(count):
            if cfg["process"] == "dirichlet":
                series = sample_dirichlet_process(cfg["theta"], cfg["eps"], gen)
            else:
                series = sample_gamma_process(cfg["theta"], cfg["eps"], gen)
                if cfg["process"] == "lebesgue":
                    series = weight_as_lebesgue(series)
            record = series_record(series, cfg["theta"], cfg["eps"], rng)
            record["draw"] = draw_index
            records.append(record)
            draw_index += 1
    if cfg["format"] == "json":
        cols = []
    else:
        cols = ["draw", "atom", "mass", "location", "total_mass", "tail_bound",
                "log_weight", "seed", "stream_id"]
        flat = []
        for record in records:
            for atom, (mass, loc) in enumerate(zip(record["masses"], record["locations"])):
                flat.append({
                    "draw": record["draw"], "atom": atom, "mass": mass, "location": loc,
                    "total_mass": record["total_mass"], "tail_bound": record["tail_bound"],
                    "log_weight": record["log_weight"], "seed": record["seed"],
                    "stream_id": record["stream_id"],
                })
        records = flat
    return cols, records


def _run_laplace(cfg):
    if not cfg["f"]:
        raise DomainError("laplace needs --f (or f= in the config file)")
    f = parse_step_function(cfg["f"])
    est = mc_laplace(cfg["theta"], f, cfg["samples"], RngStream(cfg["seed"]),
                     eps=cfg["eps"], streams=cfg["streams"])
    exact = analytic_laplace(cfg["theta"], f)
    z = (est.estimate - exact) / est.stderr if est.stderr > 0 else 0.0
    record = {"theta": cfg["theta"], "f": cfg["f"], "samples": est.n_samples,
              "estimate": est.estimate, "stderr": est.stderr,
              "analytic": exact, "z_score": z}
    return list(record), [record]


def _random_invariance_pair(gen):
    # min(a) >= e^-0.25 and min(f) >= 1.1 keep min(a f) > 0.85, well inside
    # the finite-variance region of the weighted estimator.
    grid = np.array([0.0, 0.25, 0.5, 0.75, 1.0])
    a = StepFunction(grid, np.exp(gen.uniform(-0.25, 0.25, size=4)))
    f = StepFunction(grid, gen.uniform(1.1, 1.6, size=4))
    return a, f


def _run_invariance(cfg):
    explicit = bool(cfg["a"]) or bool(cfg["f"])
    if explicit and not (cfg["a"] and cfg["f"]):
        raise DomainError("invariance needs both --a and --f when either is given")
    records = []
    pair_count = 1 if explicit else cfg["pairs"]
    if pair_count < 1:
        raise DomainError("pairs must be a positive integer")
    config_gen = RngStream(cfg["seed"], 999_983).generator()
    for pair in range(pair_count):
        if explicit:
            a, f = parse_step_function(cfg["a"]), parse_step_function(cfg["f"])
        else:
            a, f = _random_invariance_pair(config_gen)
        report = quasi_invariance_check(
            cfg["theta"], a, f, cfg["samples"],
            RngStream(cfg["seed"], 1000 + pair * cfg["streams"]),
            eps=cfg["eps"], streams=cfg["streams"],
        )
        records.append({
            "pair": pair, "phi": report.phi_a,
            "analytic_f": report.analytic_f, "analytic_af": report.analytic_af,
            "analytic_residual": report.analytic_residual,
            "estimate": report.mc.estimate, "stderr": report.mc.stderr,
            "z_score": report.z_score,
        })
    cols = ["pair", "phi", "analytic_f", "analytic_af", "analytic_residual",
            "estimate", "stderr", "z_score"]
    return cols, records


def _run_partition_sums(cfg):
    if not cfg["weights"]:
        raise DomainError("partition-sums needs --weights")
    spec = PartitionSpec(np.array(_parse_float_list(cfg["weights"], "weights")))
    edges = _parse_float_list(cfg["b"], "b")
    results = weighted_box_mass(spec, edges, cfg["samples"], RngStream(cfg["seed"]),
                                eps=cfg["eps"], streams=cfg["streams"])
    records = []
    for b, est in zip(edges, results):
        exact = box_mass_L(spec, b)
        z = (est.estimate - exact) / est.stderr if est.stderr > 0 else 0.0
        records.append({"weights": cfg["weights"], "b": b, "samples": est.n_samples,
                        "estimate": est.estimate, "stderr": est.stderr,
                        "exact": exact, "z_score": z})
    cols = ["weights", "b", "samples", "estimate", "stderr", "exact", "z_score"]
    return cols, records


_MELLIN_COLS = ["n", "lambda", "r", "gamma", "L", "lnFn_over_n", "gap"]


def _run_mellin(cfg):
    study = L_limit_study(cfg["lam"], n_max=cfg["nmax"], n_min=cfg["nmin"])
    cfg["extrapolated_limit"] = study.extrapolated_limit
    cfg["extrapolated_gap"] = study.extrapolated_gap
    cfg["envelope_constant"] = study.envelope_constant
    return _MELLIN_COLS, study.rows()


def _run_saddle(cfg):
    sol = solve_saddle(cfg["lam"])
    record = {"lambda": sol.lam, "gamma": sol.gamma, "L": sol.L_value,
              "curvature": sol.curvature, "ratio_form": sol.ratio_form}
    return list(record), [record]


def _run_mp_demo(cfg):
    dims = _parse_int_list(cfg["n"], "n")
    if cfg["spoints"] < 2 or cfg["smax"] <= 0.0:
        raise DomainError("need smax > 0 and at least two s points")
    s_grid = np.linspace(0.0, cfg["smax"], cfg["spoints"])
    rng = RngStream(cfg["seed"]) if cfg["samples"] > 0 else None
    rows = charfun_gap_rows(s_grid, dims, samples=cfg["samples"], rng=rng,
                            streams=cfg["streams"])
    return ["n", "s", "quad", "mc", "stderr", "gauss", "gap"], rows


def _run_divergence(cfg):
    if cfg["schedule"] not in ("constant", "sqrt_n"):
        raise DomainError("schedule must be constant or sqrt_n")
    schedule = RadiusSchedule(kind=cfg["schedule"], scale=cfg["scale"])
    table = divergence_experiment(cfg["lam"], schedule,
                                  np.arange(cfg["nmin"], cfg["nmax"] + 1))
    return _MELLIN_COLS, table.rows()


def _run_box_mass(cfg):
    if not cfg["weights"]:
        raise DomainError("box-mass needs --weights")
    spec = PartitionSpec(np.array(_parse_float_list(cfg["weights"], "weights")))
    records = [{"weights": cfg["weights"], "b": b, "mass": box_mass_L(spec, b)}
               for b in _parse_float_list(cfg["b"], "b")]
    return ["weights", "b", "mass"], records


_HANDLERS = {
    "sample": _run_sample,
    "laplace": _run_laplace,
    "invariance": _run_invariance,
    "partition-sums": _run_partition_sums,
    "mellin": _run_mellin,
    "saddle": _run_saddle,
    "mp-demo": _run_mp_demo,
    "divergence": _run_divergence,
    "box-mass": _run_box_mass,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed its message
        return int(exc.code) if exc.code else 0
    if not args.command:
        parser.print_usage(sys.stderr)
        return 2
    try:
        cfg = resolve_config(args)
        columns, records = _HANDLERS[args.command](cfg)
        _write(_emit(cfg, columns, records), cfg.get("out"))
    except InfiniteVarianceError:
        # Reword the library hint: the CLI deliberately has no override flag.
        print(
            "conicpd: invalid configuration: second moment Psi(2f-1) diverges "
            "for min f <= 1/2; raise f above 1/2 everywhere",
            file=sys.stderr,
        )
        return 2
    except DomainError as exc:
        print(f"conicpd: invalid configuration: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"conicpd: cannot write output: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"conicpd: numerical failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
