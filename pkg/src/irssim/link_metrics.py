"""Received SNR bookkeeping.

The receiver sees the reflected aggregate plus the direct ray as one
effective complex gain; SNR follows from the fixed transmit power and
noise floor. Everything here is scalar algebra on top of the channel and
reflection modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import ChannelSet
from .geometry import ScenarioConfig
from .phase_control import ReflectionConfig


@dataclass(frozen=True)
class LinkParams:
    tx_power: float  # W
    noise_power: float  # W

    def __post_init__(self):
        if self.tx_power <= 0 or self.noise_power <= 0:
            raise ValueError("tx_power and noise_power must be positive")

    @classmethod
    def from_scenario(cls, scenario: ScenarioConfig) -> "LinkParams":
        return cls(tx_power=scenario.tx_power, noise_power=scenario.noise_power)


def effective_gain(channels: ChannelSet, reflection: ReflectionConfig) -> complex:
    """End-to-end voltage gain: reflected aggregate plus the direct ray."""
    if reflection.coeffs.shape != channels.ap_to_elements.shape:
        raise ValueError(
            f"got {reflection.coeffs.size} coefficients for "
            f"{channels.n_elements} elements"
        )
    reflected = (channels.cascade * reflection.coeffs).sum()
    return complex(reflection.beta * reflected + channels.ap_to_ue)


def snr_db(gain: complex, link: LinkParams) -> float:
    """Received SNR in dB for a given effective gain; -inf when the gain is 0."""
    power_gain = abs(gain) ** 2
    if power_gain == 0.0:
        return float("-inf")
    return 10.0 * math.log10(link.tx_power * power_gain / link.noise_power)


def snr_gain_db(
    channels: ChannelSet, reflection: ReflectionConfig, link: LinkParams
) -> float:
    """SNR improvement of the configured panel over the direct ray alone, dB.

    The tx power and noise floor cancel in the ratio, so this is a pure
    gain comparison; ``link`` is accepted for interface symmetry. Raises
    when the direct ray has zero magnitude (no baseline to compare with).
    """
    baseline = abs(channels.ap_to_ue)
    if baseline == 0.0:
        raise ValueError("direct ray has zero gain; SNR gain is undefined")
    effective = abs(effective_gain(channels, reflection))
    if effective == 0.0:
        return float("-inf")
    return 20.0 * math.log10(effective / baseline)
