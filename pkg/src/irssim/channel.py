"""Line-of-sight channel gains.

Every link is a single deterministic ray. The amplitude follows a power
law anchored at a reference distance d0 and the phase accumulates with
path length:

    gain(d) = sqrt(ref_gain) * (d0 / max(d, d0))^(alpha/2) * exp(-j*2*pi*d/wavelength)

Gains are dimensionless voltage factors; squared magnitudes are power
gains. ``ref_gain`` is the power gain at the reference distance, a pure
normalization: every comparison this package makes is a ratio of gains,
so the constant cancels everywhere except absolute received power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import SPEED_OF_LIGHT, IrsGeometry, Point3, ScenarioConfig

TWO_PI = 2.0 * math.pi

# power gain at d0 (-20 dB): keeps the reflected aggregate and the direct
# ray on comparable footing at room scale
DEFAULT_REF_GAIN = 0.01


def wrap_phase(phi):
    """Wrap angles to [0, 2*pi). Accepts scalars or arrays."""
    wrapped = np.mod(phi, TWO_PI)
    # np.mod can round a tiny negative input up to the modulus itself
    wrapped = np.where(wrapped >= TWO_PI, 0.0, wrapped)
    if np.isscalar(phi) or np.ndim(phi) == 0:
        return float(wrapped)
    return wrapped


@dataclass(frozen=True)
class ChannelParams:
    """Propagation constants shared by every link of a study."""

    wavelength: float
    path_loss_exponent: float = 2.0
    ref_distance: float = 1.0
    ref_gain: float = DEFAULT_REF_GAIN

    def __post_init__(self):
        if not (math.isfinite(self.wavelength) and self.wavelength > 0):
            raise ValueError(f"wavelength must be positive, got {self.wavelength}")
        if not (math.isfinite(self.path_loss_exponent) and self.path_loss_exponent >= 0):
            raise ValueError(f"path loss exponent must be >= 0, got {self.path_loss_exponent}")
        if self.ref_distance <= 0:
            raise ValueError(f"reference distance must be positive, got {self.ref_distance}")
        if self.ref_gain <= 0:
            raise ValueError(f"reference gain must be positive, got {self.ref_gain}")

    @classmethod
    def from_scenario(cls, scenario: ScenarioConfig) -> "ChannelParams":
        return cls(
            wavelength=SPEED_OF_LIGHT / scenario.frequency,
            path_loss_exponent=scenario.path_loss_exponent,
            ref_distance=scenario.ref_distance,
        )


@dataclass(frozen=True)
class ChannelSet:
    """Complex gains of the three links of one AP / panel / receiver placement.

    ``ap_to_elements[n]`` and ``elements_to_ue[n]`` follow the row-major
    element order of the geometry; ``ap_to_ue`` is the direct ray.
    """

    ap_to_elements: np.ndarray
    elements_to_ue: np.ndarray
    ap_to_ue: complex

    @property
    def n_elements(self) -> int:
        return self.ap_to_elements.size

    @property
    def cascade(self) -> np.ndarray:
        """Per-element gain of the reflected two-hop path (unit reflection)."""
        return self.elements_to_ue * self.ap_to_elements


def _amplitude(distance, params: ChannelParams):
    clamped = np.maximum(distance, params.ref_distance)
    return math.sqrt(params.ref_gain) * (params.ref_distance / clamped) ** (
        params.path_loss_exponent / 2.0
    )


def los_gain(tx: Point3, rx: Point3, params: ChannelParams) -> complex:
    """Complex voltage gain of the ray from tx to rx.

    The amplitude is clamped below ``ref_distance`` (the model is anchored
    there and must not diverge); the phase always uses the true distance.
    """
    d = tx.distance_to(rx)
    if d == 0.0:
        raise ValueError("tx and rx coincide; the ray gain is undefined")
    return complex(_amplitude(d, params) * np.exp(-1j * TWO_PI * d / params.wavelength))


def compute_channels(
    geom: IrsGeometry, ap: Point3, ue: Point3, params: ChannelParams
) -> ChannelSet:
    """All link gains for one receiver position.

    Equivalent to calling :func:`los_gain` once per element and hop, but
    vectorized over the lattice. Raises if the receiver or the AP sits
    exactly on an element (zero path length).
    """
    positions = geom.element_positions
    d_in = np.linalg.norm(positions - ap.as_array(), axis=1)
    d_out = np.linalg.norm(positions - ue.as_array(), axis=1)
    if np.any(d_in == 0.0):
        raise ValueError("AP coincides with an array element")
    if np.any(d_out == 0.0):
        raise ValueError("receiver coincides with an array element")
    ap_to_elements = _amplitude(d_in, params) * np.exp(-1j * TWO_PI * d_in / params.wavelength)
    elements_to_ue = _amplitude(d_out, params) * np.exp(-1j * TWO_PI * d_out / params.wavelength)
    ap_to_elements.flags.writeable = False
    elements_to_ue.flags.writeable = False
    return ChannelSet(ap_to_elements, elements_to_ue, los_gain(ap, ue, params))
