"""Deployment geometry: the element lattice and the reference scenarios.

The reflecting panel is a vertical rectangular array. Columns run along x,
rows stack downward along z, and every element sits in the plane
y = center.y. Element indexing is row-major from the top-left corner:

    index = row * n_cols + col

with row 0 the topmost row (largest z). Grouped control schemes rely on
this ordering, so it is part of the module contract, not an implementation
detail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s

Bounds = tuple[float, float, float, float]


@dataclass(frozen=True)
class Point3:
    """A point in room coordinates, meters."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.z)):
            raise ValueError(f"coordinates must be finite, got ({self.x}, {self.y}, {self.z})")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def distance_to(self, other: "Point3") -> float:
        return math.dist((self.x, self.y, self.z), (other.x, other.y, other.z))


@dataclass(frozen=True)
class IrsGeometry:
    """Element lattice of one reflecting panel.

    ``element_positions`` holds one row per element in the row-major order
    described in the module docstring; ``column_of[i]`` is the column index
    of element i. Both arrays are read-only.
    """

    n_cols: int
    n_rows: int
    spacing: float
    center: Point3
    element_positions: np.ndarray
    column_of: np.ndarray

    @property
    def n_elements(self) -> int:
        return self.n_cols * self.n_rows

    def column_elements(self, col: int) -> np.ndarray:
        """Element indices of one column, ordered top to bottom."""
        if not 0 <= col < self.n_cols:
            raise ValueError(f"column {col} out of range for {self.n_cols} columns")
        return col + self.n_cols * np.arange(self.n_rows)


def build_irs_array(n_cols: int, n_rows: int, frequency: float, center: Point3) -> IrsGeometry:
    """Build a half-wavelength lattice of n_cols * n_rows elements.

    Element spacing is half the carrier wavelength in both directions and
    the lattice is centered on ``center``: for even dimensions the center
    falls between elements, for odd dimensions on one.
    """
    if n_cols < 1 or n_rows < 1:
        raise ValueError(f"array dimensions must be positive, got {n_cols}x{n_rows}")
    if not (math.isfinite(frequency) and frequency > 0):
        raise ValueError(f"carrier frequency must be positive and finite, got {frequency}")
    spacing = (SPEED_OF_LIGHT / frequency) / 2.0

    idx = np.arange(n_cols * n_rows)
    row, col = np.divmod(idx, n_cols)
    positions = np.empty((idx.size, 3), dtype=float)
    positions[:, 0] = center.x + (col - (n_cols - 1) / 2.0) * spacing
    positions[:, 1] = center.y
    # row 0 is the top of the panel, so z decreases with the row index
    positions[:, 2] = center.z + ((n_rows - 1) / 2.0 - row) * spacing
    positions.flags.writeable = False
    col = col.astype(np.intp)
    col.flags.writeable = False
    return IrsGeometry(n_cols, n_rows, spacing, center, positions, col)


@dataclass(frozen=True)
class ScenarioConfig:
    """Fixed parameters of one deployment study.

    ``map_bounds`` is (x_min, x_max, y_min, y_max) of the horizontal region
    receivers may occupy; all receivers share the height ``ue_height``.
    """

    ap_pos: Point3
    irs_center: Point3
    ue_height: float
    map_bounds: Bounds
    frequency: float = 26e9
    tx_power: float = 0.05  # W
    noise_power: float = 1e-9  # W
    path_loss_exponent: float = 2.0
    ref_distance: float = 1.0  # m
    grid_step: float = 0.5  # m

    def __post_init__(self):
        if not (math.isfinite(self.frequency) and self.frequency > 0):
            raise ValueError(f"carrier frequency must be positive, got {self.frequency}")
        if self.tx_power <= 0 or self.noise_power <= 0:
            raise ValueError("tx_power and noise_power must be positive")
        if not (math.isfinite(self.path_loss_exponent) and self.path_loss_exponent >= 0):
            raise ValueError(f"path loss exponent must be >= 0, got {self.path_loss_exponent}")
        if self.ref_distance <= 0:
            raise ValueError(f"reference distance must be positive, got {self.ref_distance}")
        if self.grid_step <= 0:
            raise ValueError(f"grid step must be positive, got {self.grid_step}")
        if not math.isfinite(self.ue_height):
            raise ValueError("ue_height must be finite")
        x_min, x_max, y_min, y_max = self.map_bounds
        if x_max < x_min or y_max < y_min:
            raise ValueError(f"map bounds out of order: {self.map_bounds}")


# Reference deployments share the map, AP site and panel site; they differ
# only in mount heights (AP, panel center, receivers).
_PRESET_HEIGHTS = {
    1: (1.5, 1.5, 1.5),
    2: (2.5, 2.0, 1.5),
    3: (5.0, 2.5, 1.5),
}


def scenario_preset(scenario_id: int) -> ScenarioConfig:
    """One of the three reference deployments on the 20 m x 20 m map."""
    try:
        ap_z, irs_z, ue_z = _PRESET_HEIGHTS[scenario_id]
    except KeyError:
        raise ValueError(f"unknown scenario id {scenario_id!r}; expected 1, 2 or 3") from None
    return ScenarioConfig(
        ap_pos=Point3(4.0, 15.0, ap_z),
        irs_center=Point3(10.0, 20.0, irs_z),
        ue_height=ue_z,
        map_bounds=(0.0, 20.0, 0.0, 20.0),
    )


def irs_for_scenario(scenario: ScenarioConfig, n_cols: int = 32, n_rows: int = 32) -> IrsGeometry:
    """Panel lattice at the scenario's carrier frequency and mount point."""
    return build_irs_array(n_cols, n_rows, scenario.frequency, scenario.irs_center)


def ue_grid(scenario: ScenarioConfig) -> list[Point3]:
    """Receiver evaluation grid for coverage sweeps.

    Regular lattice over ``map_bounds`` with pitch ``grid_step`` (bounds
    inclusive), all points at ``ue_height``, ordered row by row: y is the
    outer loop, x the inner one, both ascending. Points closer (in the
    horizontal plane) than ``ref_distance`` to the AP or to the panel
    center are dropped, since the path loss model is anchored at that
    distance and says nothing useful inside it.
    """
    x_min, x_max, y_min, y_max = scenario.map_bounds
    xs = _axis_ticks(x_min, x_max, scenario.grid_step)
    ys = _axis_ticks(y_min, y_max, scenario.grid_step)
    ap, irs = scenario.ap_pos, scenario.irs_center
    d_min = scenario.ref_distance
    points = []
    for y in ys:
        for x in xs:
            if math.hypot(x - ap.x, y - ap.y) < d_min:
                continue
            if math.hypot(x - irs.x, y - irs.y) < d_min:
                continue
            points.append(Point3(x, y, scenario.ue_height))
    return points


def _axis_ticks(lo: float, hi: float, step: float) -> list[float]:
    # tolerate a rounded upper bound: 20.0 must stay on a 0.5 m grid
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [lo + i * step for i in range(n)]
