"""Figure construction and rendering.

Rendering is deterministic: the Agg backend, a fixed style profile, and
pinned output metadata mean identical inputs produce byte-identical image
files. Heatmap figures share one color scale across all panels so the
panels can be compared by eye.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .schemas import KINDS, read_table

# one style for every figure; rendering under rc_context keeps the output
# independent of whatever matplotlibrc the host environment carries
STYLE = {
    "figure.dpi": 150,
    "savefig.dpi": 150,
    "font.size": 9,
    "font.family": "DejaVu Sans",
    "axes.grid": True,
    "grid.alpha": 0.3,
    "grid.linewidth": 0.5,
    "axes.axisbelow": True,
    "figure.constrained_layout.use": True,
    "svg.hashsalt": "plotkit",
}

_AXIS_DEFAULTS = {
    "heatmap": ("x [m]", "y [m]"),
    "cdf": ("SNR gain [dB]", "cumulative fraction"),
    "line": ("row index", "phase [rad]"),
    "hist": ("phase [rad]", "count"),
    "bar": ("", "mean SNR [dB]"),
}

_COLORBAR_LABEL = "SNR gain [dB]"


@dataclass(frozen=True)
class FigureSpec:
    """What to draw: input tables, figure kind, labels, output path."""

    kind: str
    inputs: tuple[Path, ...]
    output: Path
    labels: tuple[str, ...] | None = None
    xlabel: str | None = None
    ylabel: str | None = None
    title: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        object.__setattr__(self, "inputs", tuple(Path(p) for p in self.inputs))
        object.__setattr__(self, "output", Path(self.output))
        if not self.inputs:
            raise ValueError("at least one input file is required")
        for p in self.inputs:
            if not p.is_file():
                raise ValueError(f"input file not found: {p}")
        if self.labels is not None and len(self.labels) != len(self.inputs):
            raise ValueError(
                f"got {len(self.labels)} labels for {len(self.inputs)} inputs"
            )


def _labels(spec: FigureSpec) -> list[str]:
    if spec.labels is not None:
        return list(spec.labels)
    return [p.stem for p in spec.inputs]


def _edges(centers: np.ndarray) -> np.ndarray:
    """Cell edges bracketing each center; a lone center gets a unit cell."""
    c = np.asarray(centers, dtype=float)
    if c.size == 1:
        return np.array([c[0] - 0.5, c[0] + 0.5])
    mid = (c[:-1] + c[1:]) / 2.0
    return np.concatenate(([2 * c[0] - mid[0]], mid, [2 * c[-1] - mid[-1]]))


def _gridded(table: dict[str, np.ndarray]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Pivot scattered (x, y, value) rows onto a rectangular grid.

    Sweep files omit keep-out points near the transmitter and the panel,
    so the grid may have holes; those cells come back NaN and render blank.
    """
    xs = np.unique(table["x_m"])
    ys = np.unique(table["y_m"])
    values = np.full((ys.size, xs.size), np.nan)
    xi = np.searchsorted(xs, table["x_m"])
    yi = np.searchsorted(ys, table["y_m"])
    values[yi, xi] = table["snr_gain_db"]
    return xs, ys, values


def _heatmap(spec: FigureSpec, tables: list[dict[str, np.ndarray]]) -> plt.Figure:
    grids = [_gridded(t) for t in tables]
    finite = np.concatenate([g[2][np.isfinite(g[2])] for g in grids])
    vmin, vmax = float(finite.min()), float(finite.max())
    if vmin == vmax:  # a flat (or single-cell) map still needs a color range
        vmin, vmax = vmin - 0.5, vmax + 0.5

    n = len(grids)
    ncols = 1 if n == 1 else 2
    nrows = math.ceil(n / ncols)
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(3.4 * ncols + 0.9, 3.0 * nrows), squeeze=False
    )
    labels = _labels(spec)
    mesh = None
    for ax, (xs, ys, values), label in zip(axes.flat, grids, labels):
        mesh = ax.pcolormesh(
            _edges(xs), _edges(ys), values, vmin=vmin, vmax=vmax, cmap="viridis"
        )
        ax.set_aspect("equal")
        ax.grid(False)
        if n > 1 or spec.title is None:
            ax.set_title(label)
        ax.set_xlabel(spec.xlabel or _AXIS_DEFAULTS["heatmap"][0])
        ax.set_ylabel(spec.ylabel or _AXIS_DEFAULTS["heatmap"][1])
    for ax in axes.flat[n:]:
        ax.set_visible(False)
    fig.colorbar(mesh, ax=axes.ravel().tolist(), label=_COLORBAR_LABEL, shrink=0.85)
    return fig


def _cdf(spec: FigureSpec, tables: list[dict[str, np.ndarray]]) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(4.6, 3.4))
    for table, label in zip(tables, _labels(spec)):
        ax.plot(
            table["snr_gain_db"], table["cum_fraction"],
            drawstyle="steps-post", linewidth=1.4, label=label,
        )
    ax.set_ylim(0.0, 1.02)
    ax.legend(loc="lower right")
    return fig


def _line(spec: FigureSpec, tables: list[dict[str, np.ndarray]]) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(4.6, 3.4))
    for table, label in zip(tables, _labels(spec)):
        ax.plot(
            table["row_index"], table["phase_rad"],
            marker="o", markersize=3, linewidth=1.2, label=label,
        )
    if len(tables) > 1:
        ax.legend()
    return fig


def _hist(spec: FigureSpec, tables: list[dict[str, np.ndarray]]) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(4.6, 3.4))
    alpha = 1.0 if len(tables) == 1 else 0.6
    for table, label in zip(tables, _labels(spec)):
        widths = table["bin_high_rad"] - table["bin_low_rad"]
        ax.bar(
            table["bin_low_rad"], table["count"], width=widths,
            align="edge", alpha=alpha, edgecolor="black", linewidth=0.5, label=label,
        )
    if len(tables) > 1:
        ax.legend()
    return fig


def _bar(spec: FigureSpec, tables: list[dict[str, np.ndarray]]) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(4.6, 3.4))
    methods = list(tables[0]["method"])
    for table in tables[1:]:
        if list(table["method"]) != methods:
            raise ValueError("bar inputs must list the same methods in the same order")
    x = np.arange(len(methods), dtype=float)
    k = len(tables)
    width = 0.8 / k
    for i, (table, label) in enumerate(zip(tables, _labels(spec))):
        ax.bar(x + (i - (k - 1) / 2) * width, table["mean_snr_db"],
               width=width, label=label)
    ax.set_xticks(x)
    ax.set_xticklabels(methods, rotation=20, ha="right")
    if k > 1:
        ax.legend()
    elif spec.title is None:
        n_ue, seed = int(tables[0]["n_ue"][0]), int(tables[0]["seed"][0])
        ax.set_title(f"{n_ue} receivers, seed {seed}")
    return fig


_BUILDERS = {
    "heatmap": _heatmap,
    "cdf": _cdf,
    "line": _line,
    "hist": _hist,
    "bar": _bar,
}


def build_figure(spec: FigureSpec) -> plt.Figure:
    """Build the matplotlib figure for `spec` without writing anything."""
    tables = [read_table(p, spec.kind) for p in spec.inputs]
    with plt.rc_context(STYLE):
        fig = _BUILDERS[spec.kind](spec, tables)
        if spec.kind != "heatmap":
            ax = fig.axes[0]
            ax.set_xlabel(spec.xlabel or _AXIS_DEFAULTS[spec.kind][0])
            ax.set_ylabel(spec.ylabel or _AXIS_DEFAULTS[spec.kind][1])
        if spec.title is not None:
            fig.suptitle(spec.title)
    return fig


def render(spec: FigureSpec) -> Path:
    """Render `spec` to its output path and return that path.

    Identical inputs give byte-identical files: the style profile is fixed
    and the image metadata is pinned (no timestamps, no library versions).
    """
    fig = build_figure(spec)
    try:
        metadata = {"Software": "plotkit"} if spec.output.suffix == ".png" else None
        with plt.rc_context(STYLE):
            fig.savefig(spec.output, metadata=metadata)
    finally:
        plt.close(fig)
    return spec.output
