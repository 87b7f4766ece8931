"""Deterministic link-budget simulator for reflecting-surface assisted links.

A passive reflecting panel between an access point and a receiver is
modeled as a lattice of unit-modulus reflection coefficients acting on
line-of-sight rays. The package builds the geometry, computes the ray
gains, configures the panel under four control schemes (continuous or
1-bit phases, per element or per column), searches the column-binary
sign space, and reproduces the coverage studies: SNR-gain maps, CDFs,
phase diagnostics, and random-drop averages.
"""

__version__ = "0.1.0"

from .channel import (
    DEFAULT_REF_GAIN,
    ChannelParams,
    ChannelSet,
    compute_channels,
    los_gain,
    wrap_phase,
)
from .geometry import (
    SPEED_OF_LIGHT,
    IrsGeometry,
    Point3,
    ScenarioConfig,
    build_irs_array,
    irs_for_scenario,
    scenario_preset,
    ue_grid,
)
from .link_metrics import LinkParams, effective_gain, snr_db, snr_gain_db
from .phase_control import (
    ColumnCapacityError,
    ReflectionConfig,
    Scheme,
    binarize,
    column_aggregate,
    column_group,
    configure,
    coordinate_ascent_column_binary,
    exhaustive_column_binary,
    optimal_continuous,
)

__all__ = [
    "__version__",
    "SPEED_OF_LIGHT",
    "DEFAULT_REF_GAIN",
    "Point3",
    "IrsGeometry",
    "ScenarioConfig",
    "build_irs_array",
    "irs_for_scenario",
    "scenario_preset",
    "ue_grid",
    "ChannelParams",
    "ChannelSet",
    "los_gain",
    "compute_channels",
    "wrap_phase",
    "Scheme",
    "ReflectionConfig",
    "ColumnCapacityError",
    "optimal_continuous",
    "binarize",
    "column_group",
    "column_aggregate",
    "configure",
    "exhaustive_column_binary",
    "coordinate_ascent_column_binary",
    "LinkParams",
    "effective_gain",
    "snr_db",
    "snr_gain_db",
]
