"""Command line front end: runs studies and writes CSV or JSON result files.

Output schemas are fixed column contracts (plotting tools consume the
files by header):

    heatmap     x_m,y_m,snr_gain_db          one row per grid point, row-major
    cdf         snr_gain_db,cum_fraction
    profile     row_index,phase_rad          column ordered top to bottom
    histogram   bin_low_rad,bin_high_rad,count
    averages    method,mean_snr_db,n_ue,seed

Numbers carry 12 significant digits. Each run also writes a flat
key = value metadata sidecar holding the resolved scenario parameters;
feeding that sidecar back through --config reproduces the run.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, experiments
from .experiments import METHOD_ASCENT, METHOD_EXHAUSTIVE
from .geometry import IrsGeometry, Point3, ScenarioConfig, irs_for_scenario, scenario_preset
from .phase_control import Scheme

log = logging.getLogger(__name__)

COMMANDS = (
    "sweep",
    "cdf",
    "phase-profile",
    "phase-hist",
    "reflection-profile",
    "random-avg",
    "compare",
)
SCHEME_NAMES = tuple(s.value for s in Scheme)
METHOD_NAMES = SCHEME_NAMES + (METHOD_ASCENT, METHOD_EXHAUSTIVE)

HEATMAP_HEADER = ("x_m", "y_m", "snr_gain_db")
CDF_HEADER = ("snr_gain_db", "cum_fraction")
PROFILE_HEADER = ("row_index", "phase_rad")
HIST_HEADER = ("bin_low_rad", "bin_high_rad", "count")
AVERAGES_HEADER = ("method", "mean_snr_db", "n_ue", "seed")

# flat config / sidecar keys describing a scenario and the panel dims
CONFIG_KEYS = (
    "ap_x",
    "ap_y",
    "ap_z",
    "irs_x",
    "irs_y",
    "irs_z",
    "ue_z",
    "freq_hz",
    "tx_power_w",
    "noise_power_w",
    "alpha",
    "d0_m",
    "grid_step_m",
    "nx",
    "ny",
)


class ConfigError(ValueError):
    """Malformed run configuration file."""


@dataclass(frozen=True)
class RunSpec:
    """Everything one invocation is asked to do."""

    command: str
    scenario_id: int | None = None
    config_path: str | None = None
    schemes: tuple[str, ...] = ()
    methods: tuple[str, ...] | None = None
    n_cols: int | None = None
    n_rows: int | None = None
    grid_step: float | None = None
    out_dir: str = "."
    fmt: str = "csv"
    seed: int = 0
    n_ue: int = 100
    ue: tuple[float, float] | None = None
    column: int | None = None
    bins: int = 16
    cap: int = 24
    workers: int | None = None


@dataclass(frozen=True)
class LoadedConfig:
    """A scenario plus the panel dims that a config file pins down."""

    scenario: ScenarioConfig
    n_cols: int
    n_rows: int


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irssim",
        description="Deterministic link-budget studies for a reflecting-surface assisted link.",
    )
    parser.add_argument("--version", action="version", version=f"irssim {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument("--scenario", type=int, choices=(1, 2, 3), help="preset deployment")
    source.add_argument("--config", metavar="PATH", help="flat key=value scenario file")
    common.add_argument("--nx", type=int, help="panel columns (default 32 or config nx)")
    common.add_argument("--ny", type=int, help="panel rows (default 32 or config ny)")
    common.add_argument("--grid-step", type=float, help="receiver grid pitch in meters")
    common.add_argument("--out", default=".", metavar="DIR", help="output directory")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--workers", type=int, help="parallel point evaluations")

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_text, **kwargs):
        return sub.add_parser(name, parents=[common], help=help_text, **kwargs)

    p = add("sweep", "SNR gain heatmap for one scheme")
    p.add_argument("--scheme", choices=SCHEME_NAMES, default=Scheme.ELEMENT_CONTINUOUS.value)

    p = add("cdf", "empirical gain distribution for one scheme")
    p.add_argument("--scheme", choices=SCHEME_NAMES, default=Scheme.ELEMENT_CONTINUOUS.value)

    p = add("compare", "sweep + CDF files for several schemes")
    p.add_argument("--scheme", action="append", choices=SCHEME_NAMES, default=None)
    p.add_argument("--all-schemes", action="store_true", help="compare all four schemes")

    for name in ("phase-profile", "phase-hist"):
        p = add(name, "per-column propagation phase diagnostics")
        p.add_argument("--ue", type=float, nargs=2, metavar=("X", "Y"), help="receiver position")
        p.add_argument("--column", type=int, help="column index (default: center column)")
        if name == "phase-hist":
            p.add_argument("--bins", type=int, default=16)

    p = add("reflection-profile", "applied reflection phase down one column")
    p.add_argument("--ue", type=float, nargs=2, metavar=("X", "Y"))
    p.add_argument("--column", type=int)
    p.add_argument("--scheme", choices=SCHEME_NAMES, default=Scheme.ELEMENT_CONTINUOUS.value)

    p = add("random-avg", "mean SNR per method over random receiver drops")
    p.add_argument("--n-ue", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=24, help="exhaustive search column cap")
    p.add_argument(
        "--methods",
        nargs="+",
        choices=METHOD_NAMES,
        default=None,
        help="default: quantized + ascent (+ exhaustive when nx <= cap)",
    )
    return parser


def parse_args(argv=None) -> RunSpec:
    """Parse a command line into a RunSpec; usage errors exit with status 2."""
    parser = _build_parser()
    ns = parser.parse_args(argv)
    schemes: tuple[str, ...] = ()
    if ns.command == "compare":
        if ns.all_schemes:
            schemes = SCHEME_NAMES
        elif ns.scheme:
            schemes = tuple(dict.fromkeys(ns.scheme))
        else:
            parser.error("compare needs --all-schemes or at least one --scheme")
    elif hasattr(ns, "scheme"):
        schemes = (ns.scheme,)
    return RunSpec(
        command=ns.command,
        scenario_id=ns.scenario,
        config_path=ns.config,
        schemes=schemes,
        methods=tuple(ns.methods) if getattr(ns, "methods", None) else None,
        n_cols=ns.nx,
        n_rows=ns.ny,
        grid_step=ns.grid_step,
        out_dir=ns.out,
        fmt=ns.format,
        seed=getattr(ns, "seed", 0),
        n_ue=getattr(ns, "n_ue", 100),
        ue=tuple(ns.ue) if getattr(ns, "ue", None) else None,
        column=getattr(ns, "column", None),
        bins=getattr(ns, "bins", 16),
        cap=getattr(ns, "cap", 24),
        workers=ns.workers,
    )


def load_config(path) -> LoadedConfig:
    """Read a flat key = value scenario file.

    Missing keys fall back to the scenario-1 preset (32x32 panel); every
    override is logged. Keys outside the schema are skipped with a notice
    so run sidecars can be fed back in unchanged. A non-numeric value for
    a known key is a :class:`ConfigError` carrying the line number.
    """
    values: dict[str, float] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in CONFIG_KEYS:
            log.info("%s:%d: ignoring unknown key %r", path, lineno, key)
            continue
        try:
            values[key] = float(value)
        except ValueError:
            raise ConfigError(
                f"{path}:{lineno}: value for {key!r} is not a number: {value!r}"
            ) from None
        log.info("config override %s = %s", key, values[key])

    base = scenario_preset(1)
    get = values.get
    try:
        scenario = ScenarioConfig(
            ap_pos=Point3(
                get("ap_x", base.ap_pos.x), get("ap_y", base.ap_pos.y), get("ap_z", base.ap_pos.z)
            ),
            irs_center=Point3(
                get("irs_x", base.irs_center.x),
                get("irs_y", base.irs_center.y),
                get("irs_z", base.irs_center.z),
            ),
            ue_height=get("ue_z", base.ue_height),
            map_bounds=base.map_bounds,
            frequency=get("freq_hz", base.frequency),
            tx_power=get("tx_power_w", base.tx_power),
            noise_power=get("noise_power_w", base.noise_power),
            path_loss_exponent=get("alpha", base.path_loss_exponent),
            ref_distance=get("d0_m", base.ref_distance),
            grid_step=get("grid_step_m", base.grid_step),
        )
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return LoadedConfig(
        scenario=scenario,
        n_cols=_dim(path, "nx", get("nx", 32)),
        n_rows=_dim(path, "ny", get("ny", 32)),
    )


def _dim(path, key: str, value) -> int:
    if float(value) != int(value) or int(value) < 1:
        raise ConfigError(f"{path}: {key} must be a positive integer, got {value}")
    return int(value)


def _fmt(value) -> str:
    return format(float(value), ".12g")


def _cell(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _fmt(value)
    return str(value)


def _plain(value):
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return str(value)


def _write_text(path: Path, text: str) -> None:
    # remove the partial file if the write dies halfway
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError:
        try:
            path.unlink()
        except OSError:
            pass
        raise


def emit(path: Path, header: tuple[str, ...], rows, fmt: str, schema: str) -> None:
    """Write one record stream as CSV or as a JSON mirror of the same fields."""
    rows = list(rows)
    if fmt == "csv":
        lines = [",".join(header)]
        lines.extend(",".join(_cell(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        doc = {
            "schema": schema,
            "rows": [dict(zip(header, (_plain(v) for v in row))) for row in rows],
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    _write_text(path, text)
    log.info("wrote %s", path)


def _sidecar_lines(spec: RunSpec, scenario: ScenarioConfig, geom: IrsGeometry, label: str):
    yield f"tool = irssim {__version__}"
    yield f"created_utc = {datetime.now(timezone.utc).strftime('%Y-%m-%dT%H:%M:%SZ')}"
    yield f"command = {spec.command}"
    yield f"scenario = {label}"
    yield f"format = {spec.fmt}"
    if spec.schemes:
        yield f"schemes = {','.join(spec.schemes)}"
    if spec.command == "random-avg":
        methods = spec.methods or experiments.default_methods(geom, spec.cap)
        yield f"methods = {','.join(methods)}"
        yield f"n_ue = {spec.n_ue}"
        yield f"seed = {spec.seed}"
        yield f"cap = {spec.cap}"
    if spec.ue is not None:
        yield f"ue_x = {spec.ue[0]!r}"
        yield f"ue_y = {spec.ue[1]!r}"
    if spec.column is not None:
        yield f"column = {spec.column}"
    if spec.command == "phase-hist":
        yield f"bins = {spec.bins}"
    yield f"nx = {geom.n_cols}"
    yield f"ny = {geom.n_rows}"
    yield f"ap_x = {scenario.ap_pos.x!r}"
    yield f"ap_y = {scenario.ap_pos.y!r}"
    yield f"ap_z = {scenario.ap_pos.z!r}"
    yield f"irs_x = {scenario.irs_center.x!r}"
    yield f"irs_y = {scenario.irs_center.y!r}"
    yield f"irs_z = {scenario.irs_center.z!r}"
    yield f"ue_z = {scenario.ue_height!r}"
    yield f"freq_hz = {scenario.frequency!r}"
    yield f"tx_power_w = {scenario.tx_power!r}"
    yield f"noise_power_w = {scenario.noise_power!r}"
    yield f"alpha = {scenario.path_loss_exponent!r}"
    yield f"d0_m = {scenario.ref_distance!r}"
    yield f"grid_step_m = {scenario.grid_step!r}"


def _resolve(spec: RunSpec):
    """Scenario, panel geometry and file label for one run."""
    if spec.config_path is not None:
        loaded = load_config(spec.config_path)
        scenario = loaded.scenario
        n_cols = spec.n_cols if spec.n_cols is not None else loaded.n_cols
        n_rows = spec.n_rows if spec.n_rows is not None else loaded.n_rows
        label = Path(spec.config_path).stem
        scenario_id = None
    else:
        scenario_id = spec.scenario_id if spec.scenario_id is not None else 1
        scenario = scenario_preset(scenario_id)
        n_cols = spec.n_cols if spec.n_cols is not None else 32
        n_rows = spec.n_rows if spec.n_rows is not None else 32
        label = f"scenario{scenario_id}"
    if spec.grid_step is not None:
        scenario = replace(scenario, grid_step=spec.grid_step)
    geom = irs_for_scenario(scenario, n_cols, n_rows)
    return scenario, geom, label, scenario_id


def _heatmap_rows(result):
    for pos, gain in zip(result.positions, result.gains_db):
        yield (pos.x, pos.y, gain)


def run(spec: RunSpec) -> None:
    """Execute one RunSpec and write its result files plus metadata sidecar."""
    scenario, geom, label, scenario_id = _resolve(spec)
    out_dir = Path(spec.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ext = spec.fmt
    stem = label

    def data_path(prefix: str, suffix: str = "") -> Path:
        return out_dir / f"{prefix}_{stem}{suffix}.{ext}"

    if spec.command in ("sweep", "cdf", "compare"):
        for scheme_name in spec.schemes:
            scheme = Scheme(scheme_name)
            result = experiments.sweep(scenario, geom, scheme, spec.workers, scenario_id)
            if spec.command in ("sweep", "compare"):
                emit(
                    data_path("sweep", f"_{scheme_name}"),
                    HEATMAP_HEADER,
                    _heatmap_rows(result),
                    spec.fmt,
                    "heatmap",
                )
            if spec.command in ("cdf", "compare"):
                series = experiments.cdf(result)
                emit(
                    data_path("cdf", f"_{scheme_name}"),
                    CDF_HEADER,
                    zip(series.values, series.fractions),
                    spec.fmt,
                    "cdf",
                )
    elif spec.command in ("phase-profile", "phase-hist", "reflection-profile"):
        ue = (
            Point3(spec.ue[0], spec.ue[1], scenario.ue_height)
            if spec.ue is not None
            else experiments.midpoint_ue(scenario)
        )
        column = spec.column if spec.column is not None else geom.n_cols // 2
        if spec.command == "reflection-profile":
            profile = experiments.reflection_profile(
                scenario, geom, ue, column, Scheme(spec.schemes[0])
            )
            emit(
                data_path("reflection_profile", f"_col{column}_{spec.schemes[0]}"),
                PROFILE_HEADER,
                zip(profile.rows, profile.phases),
                spec.fmt,
                "profile",
            )
        else:
            profile = experiments.phase_profile(scenario, geom, ue, column)
            if spec.command == "phase-profile":
                emit(
                    data_path("phase_profile", f"_col{column}"),
                    PROFILE_HEADER,
                    zip(profile.rows, profile.phases),
                    spec.fmt,
                    "profile",
                )
            else:
                hist = experiments.phase_histogram(profile, spec.bins)
                emit(
                    data_path("phase_hist", f"_col{column}"),
                    HIST_HEADER,
                    zip(hist.edges[:-1], hist.edges[1:], hist.counts),
                    spec.fmt,
                    "histogram",
                )
    elif spec.command == "random-avg":
        table = experiments.random_ue_average(
            scenario, geom, spec.methods, spec.n_ue, spec.seed, spec.cap
        )
        emit(
            data_path("random_avg"),
            AVERAGES_HEADER,
            ((m, v, table.n_ue, table.seed) for m, v in table.rows),
            spec.fmt,
            "averages",
        )
    else:
        raise ValueError(f"unknown command {spec.command!r}")

    meta_path = out_dir / f"{spec.command.replace('-', '_')}_{stem}.meta"
    _write_text(meta_path, "\n".join(_sidecar_lines(spec, scenario, geom, label)) + "\n")
    log.info("wrote %s", meta_path)


def main(argv=None) -> int:
    if not logging.getLogger().handlers:
        logging.basicConfig(
            stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(name)s: %(message)s"
        )
    spec = parse_args(argv)
    try:
        run(spec)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
