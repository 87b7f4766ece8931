"""Coverage studies over a deployment.

Grid sweeps of the SNR gain, empirical distributions of the results,
per-column phase diagnostics, and averages over randomly dropped
receivers. Everything is deterministic: randomness only enters through
the explicit seed of :func:`random_ue_average`, and all receiver
positions are drawn up front so worker parallelism cannot reorder the
sample stream.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import TWO_PI, ChannelParams, ChannelSet, compute_channels, wrap_phase
from .geometry import Bounds, IrsGeometry, Point3, ScenarioConfig, ue_grid
from .link_metrics import LinkParams, effective_gain, snr_db, snr_gain_db
from .phase_control import (
    Scheme,
    configure,
    coordinate_ascent_column_binary,
    exhaustive_column_binary,
)

log = logging.getLogger(__name__)

THREADS_ENV_VAR = "IRS_SIM_THREADS"

# search strategies usable alongside the plain schemes in random_ue_average
METHOD_ASCENT = "column-binary-ascent"
METHOD_EXHAUSTIVE = "column-binary-exhaustive"
_ALL_METHODS = tuple(s.value for s in Scheme) + (METHOD_ASCENT, METHOD_EXHAUSTIVE)


@dataclass(frozen=True)
class SweepResult:
    """Per-point SNR gain of one scheme over the receiver grid."""

    scenario_id: int | None
    scheme: Scheme
    positions: tuple[Point3, ...]
    gains_db: np.ndarray
    map_bounds: Bounds
    grid_step: float

    @property
    def grid_points(self) -> list[tuple[Point3, float]]:
        return list(zip(self.positions, self.gains_db.tolist()))


@dataclass(frozen=True)
class CdfSeries:
    """Empirical distribution: distinct sorted values with cumulative fractions."""

    values: np.ndarray
    fractions: np.ndarray


@dataclass(frozen=True)
class PhaseProfile:
    """Phases along one column, ordered top to bottom."""

    column: int
    rows: np.ndarray
    phases: np.ndarray


@dataclass(frozen=True)
class PhaseHistogram:
    """Counts of column phases over uniform bins spanning [0, 2*pi)."""

    edges: np.ndarray
    counts: np.ndarray


@dataclass(frozen=True)
class MethodAverages:
    """Mean received SNR per configuration method over random receiver drops."""

    rows: tuple[tuple[str, float], ...]
    n_ue: int
    seed: int
    positions: tuple[Point3, ...]


def resolve_workers(workers: int | None = None) -> int:
    """Worker count for point evaluation; the IRS_SIM_THREADS env var caps it."""
    cap = None
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is not None:
        try:
            cap = int(raw)
        except ValueError:
            cap = -1
        if cap < 1:
            raise ValueError(f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}")
    if workers is None:
        workers = cap if cap is not None else 1
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    return min(workers, cap) if cap is not None else workers


def _map_points(fn, items, workers: int | None):
    n = resolve_workers(workers)
    if n == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def sweep(
    scenario: ScenarioConfig,
    geom: IrsGeometry,
    scheme: Scheme,
    workers: int | None = None,
    scenario_id: int | None = None,
) -> SweepResult:
    """SNR gain of one control scheme at every receiver grid point.

    Points where the channel or the gain is undefined (receiver on an
    element, dead direct ray) are skipped and logged with their
    coordinates, never recorded as zero.
    """
    params = ChannelParams.from_scenario(scenario)
    link = LinkParams.from_scenario(scenario)
    grid = ue_grid(scenario)

    def evaluate(ue: Point3):
        try:
            channels = compute_channels(geom, scenario.ap_pos, ue, params)
            reflection = configure(channels, geom, scheme)
            value = snr_gain_db(channels, reflection, link)
        except ValueError as exc:
            log.warning("skipping grid point (%g, %g, %g): %s", ue.x, ue.y, ue.z, exc)
            return None
        if not math.isfinite(value):
            log.warning(
                "skipping grid point (%g, %g, %g): gain is not finite", ue.x, ue.y, ue.z
            )
            return None
        return value

    results = _map_points(evaluate, grid, workers)
    kept = [(p, v) for p, v in zip(grid, results) if v is not None]
    gains = np.array([v for _, v in kept], dtype=float)
    gains.flags.writeable = False
    return SweepResult(
        scenario_id=scenario_id,
        scheme=scheme,
        positions=tuple(p for p, _ in kept),
        gains_db=gains,
        map_bounds=tuple(scenario.map_bounds),
        grid_step=scenario.grid_step,
    )


def cdf(result: SweepResult) -> CdfSeries:
    """Empirical CDF of the sweep's gains, one step per distinct value."""
    if result.gains_db.size == 0:
        raise ValueError("cannot build a CDF from an empty sweep")
    values, counts = np.unique(result.gains_db, return_counts=True)
    fractions = np.cumsum(counts) / result.gains_db.size
    values.flags.writeable = False
    fractions.flags.writeable = False
    return CdfSeries(values, fractions)


def median_gain_db(result: SweepResult) -> float:
    if result.gains_db.size == 0:
        raise ValueError("empty sweep has no median")
    return float(np.median(result.gains_db))


def fraction_at_or_below(result: SweepResult, threshold_db: float) -> float:
    """Fraction of grid points whose gain is at or below the threshold."""
    if result.gains_db.size == 0:
        raise ValueError("empty sweep has no coverage fraction")
    return float(np.count_nonzero(result.gains_db <= threshold_db) / result.gains_db.size)


def midpoint_ue(scenario: ScenarioConfig) -> Point3:
    """Default diagnostic receiver: the middle of the map at receiver height."""
    x_min, x_max, y_min, y_max = scenario.map_bounds
    return Point3((x_min + x_max) / 2.0, (y_min + y_max) / 2.0, scenario.ue_height)


def phase_profile(
    scenario: ScenarioConfig, geom: IrsGeometry, ue: Point3, column: int
) -> PhaseProfile:
    """Accumulated propagation phase of the reflected path down one column.

    Entry r is the phase of cascade term (AP -> element -> receiver) for
    the element in row r of the column, wrapped to [0, 2*pi). A flat
    profile means a single shared coefficient can co-phase the whole
    column; a steep gradient means it cannot.
    """
    idx = geom.column_elements(column)
    params = ChannelParams.from_scenario(scenario)
    channels = compute_channels(geom, scenario.ap_pos, ue, params)
    omega = wrap_phase(
        np.angle(channels.elements_to_ue) + np.angle(channels.ap_to_elements)
    )
    rows = np.arange(geom.n_rows)
    phases = np.ascontiguousarray(omega[idx])
    rows.flags.writeable = False
    phases.flags.writeable = False
    return PhaseProfile(column, rows, phases)


def unwrapped_spread(profile: PhaseProfile) -> float:
    """Peak-to-peak extent of a profile after phase unwrapping, radians."""
    unwrapped = np.unwrap(profile.phases)
    return float(unwrapped.max() - unwrapped.min())


def phase_histogram(profile: PhaseProfile, n_bins: int = 16) -> PhaseHistogram:
    """Histogram of a column profile over uniform bins covering [0, 2*pi)."""
    if n_bins < 1:
        raise ValueError(f"need at least one bin, got {n_bins}")
    counts, edges = np.histogram(profile.phases, bins=n_bins, range=(0.0, TWO_PI))
    counts.flags.writeable = False
    edges.flags.writeable = False
    return PhaseHistogram(edges, counts)


def reflection_profile(
    scenario: ScenarioConfig,
    geom: IrsGeometry,
    ue: Point3,
    column: int,
    scheme: Scheme,
) -> PhaseProfile:
    """Reflection phase a scheme applies down one column (arg of the coefficients)."""
    idx = geom.column_elements(column)
    params = ChannelParams.from_scenario(scenario)
    channels = compute_channels(geom, scenario.ap_pos, ue, params)
    reflection = configure(channels, geom, scheme)
    phases = wrap_phase(np.angle(reflection.coeffs[idx]))
    rows = np.arange(geom.n_rows)
    phases = np.ascontiguousarray(phases)
    rows.flags.writeable = False
    phases.flags.writeable = False
    return PhaseProfile(column, rows, phases)


def default_methods(geom: IrsGeometry, cap: int = 24) -> tuple[str, ...]:
    """Column-binary method set for averages: quantized, ascent, exhaustive if it fits."""
    methods = (Scheme.COLUMN_BINARY.value, METHOD_ASCENT)
    if geom.n_cols <= cap:
        methods = methods + (METHOD_EXHAUSTIVE,)
    return methods


def random_ue_average(
    scenario: ScenarioConfig,
    geom: IrsGeometry,
    methods: tuple[str, ...] | None = None,
    n_ue: int = 100,
    seed: int = 0,
    cap: int = 24,
    max_sweeps: int = 50,
) -> MethodAverages:
    """Mean received SNR of each method over uniformly dropped receivers.

    Positions are drawn once from a generator seeded with ``seed``,
    rejecting the same keep-out disks as the evaluation grid, then every
    method is evaluated on that shared set. Averages are over per-receiver
    SNR values in dB.
    """
    if n_ue < 1:
        raise ValueError(f"n_ue must be >= 1, got {n_ue}")
    if methods is None:
        methods = default_methods(geom, cap)
    methods = tuple(methods)
    unknown = sorted(set(methods) - set(_ALL_METHODS))
    if unknown:
        raise ValueError(f"unknown methods {unknown}; valid: {', '.join(_ALL_METHODS)}")
    rng = np.random.default_rng(seed)
    positions = _draw_positions(rng, scenario, n_ue)
    params = ChannelParams.from_scenario(scenario)
    link = LinkParams.from_scenario(scenario)
    samples: dict[str, list[float]] = {m: [] for m in methods}
    for ue in positions:
        channels = compute_channels(geom, scenario.ap_pos, ue, params)
        for method in methods:
            reflection = _configure_method(channels, geom, method, cap, max_sweeps)
            samples[method].append(snr_db(effective_gain(channels, reflection), link))
    rows = tuple((m, float(np.mean(samples[m]))) for m in methods)
    return MethodAverages(rows=rows, n_ue=n_ue, seed=seed, positions=tuple(positions))


def _configure_method(
    channels: ChannelSet, geom: IrsGeometry, method: str, cap: int, max_sweeps: int
):
    if method == METHOD_EXHAUSTIVE:
        return exhaustive_column_binary(channels, geom, cap)[0]
    if method == METHOD_ASCENT:
        return coordinate_ascent_column_binary(channels, geom, max_sweeps=max_sweeps)
    return configure(channels, geom, Scheme(method))


def _draw_positions(rng, scenario: ScenarioConfig, n_ue: int) -> list[Point3]:
    x_min, x_max, y_min, y_max = scenario.map_bounds
    ap, irs = scenario.ap_pos, scenario.irs_center
    d_min = scenario.ref_distance
    out: list[Point3] = []
    attempts = 0
    while len(out) < n_ue:
        attempts += 1
        if attempts > 1000 * n_ue:
            raise ValueError("keep-out regions reject almost the whole map")
        x = rng.uniform(x_min, x_max)
        y = rng.uniform(y_min, y_max)
        if math.hypot(x - ap.x, y - ap.y) < d_min:
            continue
        if math.hypot(x - irs.x, y - irs.y) < d_min:
            continue
        out.append(Point3(x, y, scenario.ue_height))
    return out
