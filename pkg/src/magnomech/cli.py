"""Command-line front end, configuration parsing and CSV output."""

from __future__ import annotations

import argparse
import csv
import io
import math
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .constants import TWO_PI
from .dynamics import format_matrix, solve_lyapunov
from .errors import ConfigurationError, DomainError, MagnomechError
from .measures import PAIR_TAGS, PAIRS
from .model import SystemParams
from .sweep import AXIS_PARAMETERS, FIGURES, AxisSpec, SweepResult, evaluate_point, figure_preset, pipeline, sweep

COMMANDS = ("correlations", "sweep", "reproduce", "stability")

FREQUENCY_KEYS = (
    "omega_a", "omega_b", "omega_m", "gamma_a", "gamma_b", "gamma_m",
    "g_ga", "g_gb_eff", "xi", "delta_a", "delta_b_tilde",
)
FREQUENCY_UNITS = {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9}
TEMPERATURE_UNITS = {"K": 1.0, "mK": 1e-3}
DIMENSIONLESS_KEYS = ("tau", "beta")
RUN_KEYS = ("grid",)

_LINE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*[=:]\s*(.*?)\s*$")
_VALUE = re.compile(r"^([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([A-Za-z]*)$")


class ConfigParseError(ConfigurationError):
    def __init__(self, message, key=None, line=None):
        where = f"line {line}: " if line is not None else ""
        what = f"{key}: " if key is not None else ""
        super().__init__(f"{where}{what}{message}")
        self.key = key
        self.line = line


@dataclass
class RunConfig:
    """Parsed configuration; ``params`` holds internal (angular, kelvin) units."""

    params: SystemParams = field(default_factory=SystemParams)
    command: Optional[str] = None
    axes: tuple = ()
    output: Optional[str] = None
    grid: Optional[int] = None


def parse_value(key: str, text: str, line: Optional[int] = None) -> float:
    """Convert ``"<number> [unit]"`` for ``key`` to internal units."""
    m = _VALUE.match(text.strip())
    if not m:
        raise ConfigParseError(f"malformed numeral {text!r}", key, line)
    number = float(m.group(1))
    unit = m.group(2)
    if key in FREQUENCY_KEYS:
        if unit and unit not in FREQUENCY_UNITS:
            raise ConfigParseError(f"unknown unit {unit!r} (expected Hz, kHz, MHz or GHz)", key, line)
        return TWO_PI * number * FREQUENCY_UNITS.get(unit, 1.0)
    if key == "T":
        if unit and unit not in TEMPERATURE_UNITS:
            raise ConfigParseError(f"unknown unit {unit!r} (expected K or mK)", key, line)
        return number * TEMPERATURE_UNITS.get(unit, 1.0)
    if unit:
        raise ConfigParseError(f"unknown unit {unit!r} for a dimensionless quantity", key, line)
    return number


def parse_config(text: str) -> RunConfig:
    """Parse flat ``key = value [unit]`` lines; ``#`` starts a comment."""
    values = {}
    grid = None
    known = set(FREQUENCY_KEYS) | {"T"} | set(DIMENSIONLESS_KEYS)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        m = _LINE.match(stripped)
        if not m:
            raise ConfigParseError(f"expected 'key = value', got {raw.strip()!r}", line=lineno)
        key, value = m.groups()
        if key in RUN_KEYS:
            try:
                grid = int(value)
            except ValueError:
                raise ConfigParseError(f"malformed integer {value!r}", key, lineno) from None
            if grid < 2:
                raise ConfigParseError("grid must be at least 2", key, lineno)
            continue
        if key not in known:
            raise ConfigParseError("unknown key", key, lineno)
        if key in values:
            raise ConfigParseError("duplicate key", key, lineno)
        number = parse_value(key, value, lineno)
        if key == "tau" and not 0.0 <= number <= 1.0:
            raise ConfigParseError(f"tau must lie in [0, 1], got {number:g}", key, lineno)
        values[key] = (number, lineno)
    try:
        params = SystemParams(**{k: v for k, (v, _) in values.items()})
    except DomainError as exc:
        raise ConfigParseError(str(exc)) from None
    return RunConfig(params=params, grid=grid)


def parse_axis(text: str) -> AxisSpec:
    """``name=start:stop[:points]`` with optional units on the bounds."""
    try:
        name, rng = text.split("=", 1)
        parts = rng.split(":")
        if len(parts) not in (2, 3):
            raise ValueError
    except ValueError:
        raise ConfigParseError(f"axis must look like name=start:stop[:points], got {text!r}") from None
    name = name.strip()
    if name not in AXIS_PARAMETERS:
        raise ConfigParseError("invalid axis parameter", name)
    start = parse_value(name, parts[0])
    stop = parse_value(name, parts[1])
    points = 101
    if len(parts) == 3:
        try:
            points = int(parts[2])
        except ValueError:
            raise ConfigParseError(f"malformed point count {parts[2]!r}", name) from None
    return AxisSpec(name, start, stop, points)


# ---------------------------------------------------------------------------
# CSV output

def fmt(x) -> str:
    """12 significant digits; empty string for an absent value."""
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return f"{x:.12g}"


REPORT_HEADER = ["pair", "E_N", "S_AtoB", "S_BtoA", "S_asym", "classification"]
SWEEP1D_HEADER = ["axis", "pair", "E_N", "S_AtoB", "S_BtoA", "S_asym", "classification", "stable"]
SWEEP2D_HEADER = ["x", "y", "pair", "quantity", "value"]
QUANTITIES = (("E_N", "e_n"), ("S_AtoB", "s_ab"), ("S_BtoA", "s_ba"), ("S_asym", "s_asym"))


def _writer(buf):
    return csv.writer(buf, lineterminator="\n")


def report_rows(reports):
    return [
        [PAIR_TAGS[tuple(r.pair)], fmt(r.e_n), fmt(r.s_ab), fmt(r.s_ba), fmt(r.s_asym), r.classification]
        for r in reports
    ]


def render_reports(reports) -> str:
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(REPORT_HEADER)
    w.writerows(report_rows(reports))
    return buf.getvalue()


def render_sweep(result: SweepResult) -> str:
    buf = io.StringIO()
    w = _writer(buf)
    if len(result.axes) == 1:
        w.writerow(SWEEP1D_HEADER)
        for x, rec in zip(result.axes[0].display_values, result.records):
            for pair in PAIRS:
                rep = rec.report(pair)
                if rep is None:
                    w.writerow([fmt(x), PAIR_TAGS[pair], "", "", "", "", "", str(rec.stable).lower()])
                else:
                    w.writerow([fmt(x), PAIR_TAGS[pair], fmt(rep.e_n), fmt(rep.s_ab), fmt(rep.s_ba),
                                fmt(rep.s_asym), rep.classification, str(rec.stable).lower()])
    else:
        w.writerow(SWEEP2D_HEADER)
        xs, ys = (ax.display_values for ax in result.axes)
        coords = [(x, y) for x in xs for y in ys]
        for (x, y), rec in zip(coords, result.records):
            for pair in PAIRS:
                rep = rec.report(pair)
                for column, attr in QUANTITIES:
                    value = None if rep is None else getattr(rep, attr)
                    w.writerow([fmt(x), fmt(y), PAIR_TAGS[pair], column, fmt(value)])
    return buf.getvalue()


def emit_csv(result, path) -> Path:
    """Write a sweep result or a sequence of correlation reports to ``path``."""
    text = render_sweep(result) if isinstance(result, SweepResult) else render_reports(result)
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


# ---------------------------------------------------------------------------
# Entry point

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_UNSTABLE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="magnomech", description=__doc__)
    parser.add_argument("--config", help="key = value configuration file")
    parser.add_argument("--threads", type=int, default=1, help="worker threads for sweeps")
    parser.add_argument("--grid", type=int, help="points per axis (overrides presets/config)")
    parser.add_argument("-o", "--output", help="output file (or directory for 'reproduce')")
    parser.add_argument("--dump-matrices", metavar="DIR",
                        help="write drift, diffusion and covariance matrices as text")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.add_parser("correlations", help="correlation measures at one operating point")
    sub.add_parser("stability", help="eigenvalues of the drift matrix at one operating point")
    p_sweep = sub.add_parser("sweep", help="1D or 2D parameter sweep")
    p_sweep.add_argument("--axis", action="append", required=True,
                         help="name=start:stop[:points], e.g. T=0K:4K:41 (repeat for 2D)")
    p_rep = sub.add_parser("reproduce", help="figure preset sweep written to <name>.csv")
    p_rep.add_argument("figure", choices=FIGURES)
    return parser


def _load_config(path) -> RunConfig:
    if path is None:
        return parse_config("")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc.strerror or exc}") from None
    return parse_config(text)


def _write(text: str, output: Optional[str]):
    if output is None:
        sys.stdout.write(text)
    else:
        path = Path(output)
        try:
            path.write_text(text, encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _dump(directory, params):
    _, L, K = pipeline(params)
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    (out / "drift.txt").write_text(format_matrix(L))
    (out / "diffusion.txt").write_text(format_matrix(K))
    try:
        (out / "covariance.txt").write_text(format_matrix(solve_lyapunov(L, K)))
    except MagnomechError:
        pass


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG
    try:
        config = _load_config(args.config)
        grid = args.grid if args.grid is not None else config.grid
        if grid is not None and grid < 2:
            raise ConfigurationError("--grid must be at least 2")
        params = config.params
        if args.dump_matrices:
            _dump(args.dump_matrices, params)

        if args.command in ("correlations", "stability"):
            point = evaluate_point(params)
            if not point.stable:
                print(point.stability, file=sys.stderr)
                for ev in point.stability.eigenvalues:
                    print(f"  {ev.real:.12g} {ev.imag:+.12g}j", file=sys.stderr)
                return EXIT_UNSTABLE
            if args.command == "stability":
                print(point.stability)
                for ev in point.stability.eigenvalues:
                    print(f"  {ev.real:.12g} {ev.imag:+.12g}j")
                print(f"min symplectic eigenvalue of V: {point.min_symplectic:.12g}")
                return EXIT_OK
            if point.reports is None:
                print(f"measures unavailable: {point.error}", file=sys.stderr)
                return EXIT_UNSTABLE
            _write(render_reports(point.reports), args.output)
            if not point.physical:
                print(f"warning: covariance violates the uncertainty principle "
                      f"(min symplectic eigenvalue {point.min_symplectic:.6g} < 1/2)",
                      file=sys.stderr)
            return EXIT_OK

        if args.command == "sweep":
            axes = [parse_axis(a) for a in args.axis]
            if grid is not None:
                axes = [ax.with_points(grid) for ax in axes]
            result = sweep(params, axes, threads=args.threads)
            _write(render_sweep(result), args.output)
            return EXIT_OK

        base, axes = figure_preset(args.figure, grid)
        result = sweep(base, axes, threads=args.threads)
        directory = Path(args.output) if args.output else Path.cwd()
        directory.mkdir(parents=True, exist_ok=True)
        path = emit_csv(result, directory / f"{args.figure}.csv")
        print(f"wrote {path}")
        return EXIT_OK
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"fatal: {exc}", file=sys.stderr)
        return EXIT_IO


def main():
    sys.exit(run())
