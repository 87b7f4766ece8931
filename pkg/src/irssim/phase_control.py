"""Reflection coefficient control.

Four closed-form schemes: continuous or 1-bit phases, applied per element
or per column. The continuous optimum rotates every reflected path onto
the phase of the direct ray, which maximizes the coherent sum; the 1-bit
variants keep whichever of {+1, -1} lies within a quarter turn of that
target. Column schemes share one coefficient per column, taken from the
topmost element.

On top of the closed forms, two search strategies for the column-binary
sign pattern: exact enumeration (small panels) and greedy coordinate
ascent (any width).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .channel import ChannelSet, wrap_phase
from .geometry import IrsGeometry


class Scheme(str, Enum):
    ELEMENT_CONTINUOUS = "element-continuous"
    ELEMENT_BINARY = "element-binary"
    COLUMN_CONTINUOUS = "column-continuous"
    COLUMN_BINARY = "column-binary"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ReflectionConfig:
    """Reflection coefficients and the scheme that produced them.

    ``coeffs[n]`` multiplies the cascade gain of element n; all entries
    have magnitude 1 and ``beta`` scales the whole reflected aggregate.
    """

    coeffs: np.ndarray
    scheme: Scheme
    beta: float = 1.0


class ColumnCapacityError(ValueError):
    """Exhaustive search over column signs would enumerate past the cap."""


def _read_only(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


def _check_elements(n: int, geom: IrsGeometry) -> None:
    if n != geom.n_elements:
        raise ValueError(f"expected {geom.n_elements} elements, got {n}")


def optimal_continuous(channels: ChannelSet) -> np.ndarray:
    """Per-element phases that co-phase every reflected path with the direct ray.

    With these phases every term of the reflected sum has the phase of
    ``ap_to_ue``, so magnitudes add. Values are wrapped to [0, 2*pi).
    """
    target = np.angle(channels.ap_to_ue)
    accumulated = np.angle(channels.elements_to_ue) + np.angle(channels.ap_to_elements)
    return wrap_phase(target - accumulated)


def binarize(theta: np.ndarray, scheme: Scheme = Scheme.ELEMENT_BINARY) -> ReflectionConfig:
    """Quantize target phases to the nearest of {+1, -1}.

    Keeps +1 when cos(theta) >= 0, i.e. the boundary exactly a quarter
    turn away rounds up.
    """
    coeffs = np.where(np.cos(theta) >= 0.0, 1.0 + 0.0j, -1.0 + 0.0j)
    return ReflectionConfig(_read_only(coeffs), scheme)


def column_group(theta: np.ndarray, geom: IrsGeometry) -> np.ndarray:
    """Broadcast each column's topmost phase to the whole column."""
    _check_elements(theta.size, geom)
    top_row = theta[: geom.n_cols]
    return top_row[geom.column_of]


def configure(channels: ChannelSet, geom: IrsGeometry, scheme: Scheme) -> ReflectionConfig:
    """Reflection coefficients for one control scheme."""
    _check_elements(channels.n_elements, geom)
    theta = optimal_continuous(channels)
    if scheme is Scheme.ELEMENT_CONTINUOUS:
        coeffs = np.exp(1j * theta)
    elif scheme is Scheme.ELEMENT_BINARY:
        return binarize(theta, scheme)
    elif scheme is Scheme.COLUMN_CONTINUOUS:
        coeffs = np.exp(1j * column_group(theta, geom))
    elif scheme is Scheme.COLUMN_BINARY:
        return binarize(column_group(theta, geom), scheme)
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    return ReflectionConfig(_read_only(coeffs), scheme)


def column_aggregate(channels: ChannelSet, geom: IrsGeometry) -> np.ndarray:
    """Sum of cascade gains within each column (one complex value per column)."""
    _check_elements(channels.n_elements, geom)
    return channels.cascade.reshape(geom.n_rows, geom.n_cols).sum(axis=0)


def _objective(signs, column_sums: np.ndarray, direct: complex) -> float:
    # accumulate in column order and square via re*re + im*im; the
    # exhaustive kernel mirrors both choices so the scalar and vectorized
    # paths produce bit-identical values (SIMD complex abs rounds
    # differently from scalar hypot)
    acc = complex(direct)
    for s, c in zip(signs, column_sums):
        acc = acc + s * c
    return acc.real * acc.real + acc.imag * acc.imag


def exhaustive_column_binary(
    channels: ChannelSet, geom: IrsGeometry, cap: int = 24
) -> tuple[ReflectionConfig, float]:
    """Best column sign pattern by full enumeration.

    Scans all 2^n_cols patterns in lexicographic order with +1 before -1
    and keeps the first strict maximum, so ties resolve to the smallest
    pattern. Returns the winning configuration together with its squared
    effective gain |direct + sum_k s_k * c_k|^2, which is the received SNR
    up to the fixed tx-power over noise factor.

    Raises :class:`ColumnCapacityError` when n_cols exceeds ``cap``; use
    :func:`coordinate_ascent_column_binary` for wide panels.
    """
    n_cols = geom.n_cols
    if n_cols > cap:
        raise ColumnCapacityError(
            f"{n_cols} columns would enumerate 2**{n_cols} sign patterns (cap {cap}); "
            "use coordinate_ascent_column_binary instead"
        )
    column_sums = column_aggregate(channels, geom)
    direct = complex(channels.ap_to_ue)

    total = 1 << n_cols
    chunk = 1 << min(n_cols, 16)
    # bit i of the pattern id drives column n_cols-1-i, so ascending ids
    # walk sign vectors lexicographically with +1 (bit 0) first
    shifts = np.arange(n_cols - 1, -1, -1, dtype=np.uint64)
    best_value = -np.inf
    best_signs = None
    for start in range(0, total, chunk):
        ids = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        signs = 1.0 - 2.0 * ((ids[:, None] >> shifts[None, :]) & 1).astype(float)
        acc = np.full(ids.shape, direct, dtype=complex)
        for k in range(n_cols):
            acc += signs[:, k] * column_sums[k]
        values = acc.real**2 + acc.imag**2
        pick = int(np.argmax(values))
        if values[pick] > best_value:
            best_value = float(values[pick])
            best_signs = signs[pick]
    coeffs = best_signs[geom.column_of].astype(complex)
    config = ReflectionConfig(_read_only(coeffs), Scheme.COLUMN_BINARY)
    return config, best_value


def coordinate_ascent_column_binary(
    channels: ChannelSet,
    geom: IrsGeometry,
    init: ReflectionConfig | None = None,
    max_sweeps: int = 50,
) -> ReflectionConfig:
    """Greedy sign flipping from an initial column-binary configuration.

    Sweeps columns in index order and keeps any single flip that strictly
    increases the squared effective gain; stops after a sweep with no
    accepted flip or after ``max_sweeps``. The result is never worse than
    the start. Default start is the quantized column-binary solution.
    """
    if init is None:
        init = configure(channels, geom, Scheme.COLUMN_BINARY)
    signs = _column_signs(init, geom)
    column_sums = column_aggregate(channels, geom)
    direct = complex(channels.ap_to_ue)
    best = _objective(signs, column_sums, direct)
    for _ in range(max_sweeps):
        improved = False
        for k in range(geom.n_cols):
            signs[k] = -signs[k]
            value = _objective(signs, column_sums, direct)
            if value > best:
                best = value
                improved = True
            else:
                signs[k] = -signs[k]
        if not improved:
            break
    coeffs = signs[geom.column_of].astype(complex)
    return ReflectionConfig(_read_only(coeffs), Scheme.COLUMN_BINARY)


def _column_signs(config: ReflectionConfig, geom: IrsGeometry) -> np.ndarray:
    """Per-column signs of a column-constant {+1, -1} configuration."""
    coeffs = config.coeffs
    _check_elements(coeffs.size, geom)
    top_row = coeffs[: geom.n_cols]
    if not np.array_equal(coeffs, top_row[geom.column_of]):
        raise ValueError("coefficients are not constant within columns")
    if np.any(top_row.imag != 0.0) or not np.all(np.isin(top_row.real, (-1.0, 1.0))):
        raise ValueError("coefficients must be exactly +1 or -1")
    return top_row.real.copy()
