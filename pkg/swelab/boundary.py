from typing import Literal

import numpy as np

from .errors import ConfigError

BoundaryPolicy = Literal["periodic", "free"]

_PAD_MODES = {"periodic": "wrap", "free": "edge"}


def extend(values: np.ndarray, bc: BoundaryPolicy, width: int) -> np.ndarray:
    """
    Add `width` ghost cells on both ends of the last axis.

    periodic: ghost cells wrap around the domain.
    free: zeroth-order extrapolation, the outermost value is copied outward.
    """
    if bc not in _PAD_MODES:
        raise ConfigError(f"Unknown boundary policy: {bc}")
    values = np.asarray(values, dtype=float)
    if width == 0:
        return values.copy()
    pad = [(0, 0)] * (values.ndim - 1) + [(width, width)]
    return np.pad(values, pad, mode=_PAD_MODES[bc])


def dilate(mask: np.ndarray, radius: int, bc: BoundaryPolicy) -> np.ndarray:
    """Widen a boolean index set by `radius` on each side (wrapping when periodic)"""
    mask = np.asarray(mask, dtype=bool)
    out = mask.copy()
    m = mask.size
    for s in range(1, radius + 1):
        if bc == "periodic":
            out |= np.roll(mask, s) | np.roll(mask, -s)
        elif s < m:
            out[s:] |= mask[:-s]
            out[:-s] |= mask[s:]
    return out


def window_indices(centers: np.ndarray, radius: int, m: int, bc: BoundaryPolicy) -> np.ndarray:
    """
    Index matrix of shape (len(centers), 2*radius + 1) around each center.

    Periodic indices wrap; free indices are clipped, which reproduces the
    copy-extrapolation ghost cells.
    """
    offsets = np.arange(-radius, radius + 1)
    idx = np.asarray(centers)[:, None] + offsets[None, :]
    if bc == "periodic":
        return np.mod(idx, m)
    return np.clip(idx, 0, m - 1)
