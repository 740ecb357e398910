"""
Interface values from cell data.

Two reconstructions are provided: piecewise-linear minmod on cell averages
and fifth-order WENO-Z interpolation of point values, the latter applied to
local characteristic variables.

Indexing: interface k is the left edge of cell k, so its left neighbour is
cell k-1 and its right neighbour is cell k. The `*_arrays` kernels work on
arrays already extended with ghost cells along the last axis; any leading
batch axes after the component axis are carried through unchanged.
"""

from dataclasses import dataclass
from typing import Literal, Optional, Sequence, Tuple

import numpy as np

from .errors import ConfigError
from .models import WenoParams
from .swe_model import (
    FieldLike,
    SWState,
    as_array,
    check_depth,
    from_characteristic,
    roe_averages,
    to_characteristic,
)

Side = Literal["minus", "plus"]


@dataclass(frozen=True)
class InterfaceValues:
    """Left-sided (minus) and right-sided (plus) values at one interface"""
    minus: SWState
    plus: SWState


def minmod(z1, z2):
    return 0.5 * (np.sign(z1) + np.sign(z2)) * np.minimum(np.abs(z1), np.abs(z2))


# ----------------------------------------------------------------------
# Minmod piecewise-linear reconstruction
# ----------------------------------------------------------------------

def minmod_slopes(Ue: np.ndarray, dx: float) -> np.ndarray:
    """Limited slopes of the cells 1..n-2 of an extended array"""
    backward = (Ue[..., 1:-1] - Ue[..., :-2]) / dx
    forward = (Ue[..., 2:] - Ue[..., 1:-1]) / dx
    return minmod(backward, forward)


def minmod_interface_arrays(Ue: np.ndarray, dx: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    One-sided values at the n-3 interfaces between extended cells (1,2) ... (n-3,n-2).

    Raises NonPositiveDepth if a reconstructed depth is not positive.
    """
    slopes = minmod_slopes(Ue, dx)
    Vm = Ue[..., 1:-2] + 0.5 * dx * slopes[..., :-1]
    Vp = Ue[..., 2:-1] - 0.5 * dx * slopes[..., 1:]
    check_depth(Vm, stage="minmod reconstruction")
    check_depth(Vp, stage="minmod reconstruction")
    return Vm, Vp


def minmod_interface_values(cell_averages: FieldLike, dx: float, j: int) -> InterfaceValues:
    """Minmod values at interface j from the cells j-2 .. j+1"""
    U = as_array(cell_averages)
    if j - 2 < 0 or j + 2 > U.shape[-1]:
        raise ConfigError(f"minmod stencil around interface {j} leaves 0..{U.shape[-1] - 1}")
    Vm, Vp = minmod_interface_arrays(U[:, j - 2 : j + 2], dx)
    return InterfaceValues(
        minus=SWState(float(Vm[0, 0]), float(Vm[1, 0])),
        plus=SWState(float(Vp[0, 0]), float(Vp[1, 0])),
    )


# ----------------------------------------------------------------------
# WENO-Z interpolation
# ----------------------------------------------------------------------

def wenoz_candidates(v: Sequence[np.ndarray]):
    """Parabolic interpolants P_k and smoothness indicators beta_k at the interface"""
    v0, v1, v2, v3, v4 = v[0], v[1], v[2], v[3], v[4]
    P0 = 0.375 * v0 - 1.25 * v1 + 1.875 * v2
    P1 = -0.125 * v1 + 0.75 * v2 + 0.375 * v3
    P2 = 0.375 * v2 + 0.75 * v3 - 0.125 * v4
    beta0 = 13.0 / 12.0 * (v0 - 2.0 * v1 + v2) ** 2 + 0.25 * (v0 - 4.0 * v1 + 3.0 * v2) ** 2
    beta1 = 13.0 / 12.0 * (v1 - 2.0 * v2 + v3) ** 2 + 0.25 * (v1 - v3) ** 2
    beta2 = 13.0 / 12.0 * (v2 - 2.0 * v3 + v4) ** 2 + 0.25 * (3.0 * v2 - 4.0 * v3 + v4) ** 2
    return (P0, P1, P2), (beta0, beta1, beta2)


def wenoz_weights(v: Sequence[np.ndarray], params: Optional[WenoParams] = None):
    """Nonlinear weights omega_k and the candidate values, minus side"""
    params = params or WenoParams()
    P, beta = wenoz_candidates(v)
    tau5 = np.abs(beta[2] - beta[0])
    alpha = [d * (1.0 + (tau5 / (b + params.eps)) ** params.p) for d, b in zip(params.d, beta)]
    total = alpha[0] + alpha[1] + alpha[2]
    return tuple(a / total for a in alpha), P


def wenoz_minus(v: Sequence[np.ndarray], params: Optional[WenoParams] = None):
    omega, P = wenoz_weights(v, params)
    return omega[0] * P[0] + omega[1] * P[1] + omega[2] * P[2]


def wenoz_plus(v: Sequence[np.ndarray], params: Optional[WenoParams] = None):
    # Mirror image of the minus side.
    return wenoz_minus(v[::-1], params)


def wenoz_interpolate(six_values: Sequence[float], params: WenoParams, side: Side) -> float:
    """
    WENO-Z value at the interface centred in six point values.

    Args:
        six_values: values at the stencil points j-5/2 .. j+5/2
        params: WENO-Z parameters
        side: "minus" (from the left) or "plus" (from the right)
    """
    values = [float(v) for v in six_values]
    if len(values) != 6:
        raise ConfigError(f"WENO-Z needs six values, got {len(values)}")
    if side == "minus":
        return float(wenoz_minus(values, params))
    if side == "plus":
        return float(wenoz_plus(values, params))
    raise ConfigError(f"Unknown interpolation side: {side}")


# ----------------------------------------------------------------------
# Characteristic-wise WENO-Z
# ----------------------------------------------------------------------

def stencil_slices(Ue: np.ndarray):
    """The six shifted views v_0..v_5 feeding interfaces 3..n-3 of an extended array"""
    n = Ue.shape[-1]
    return [Ue[..., k : n - 5 + k] for k in range(6)]


def characteristic_interface_arrays(
    Ue: np.ndarray, g: float, params: Optional[WenoParams] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """
    One-sided values at the n-5 interfaces between extended cells (2,3) ... (n-4,n-3).

    The Roe basis of each interface is built from its two neighbours; all six
    stencil states are projected onto that basis before interpolation.
    """
    check_depth(Ue, stage="characteristic reconstruction")
    v = stencil_slices(Ue)
    _, u_hat, c_hat = roe_averages(v[2], v[3], g)
    gamma = [to_characteristic(vk, u_hat, c_hat) for vk in v]
    Vm = from_characteristic(wenoz_minus(gamma, params), u_hat, c_hat)
    Vp = from_characteristic(wenoz_plus(gamma, params), u_hat, c_hat)
    check_depth(Vm, stage="characteristic reconstruction")
    check_depth(Vp, stage="characteristic reconstruction")
    return Vm, Vp


def characteristic_interface_values(
    point_values: FieldLike, g: float, j: int, params: Optional[WenoParams] = None
) -> InterfaceValues:
    """Characteristic WENO-Z values at interface j from the cells j-3 .. j+2"""
    U = as_array(point_values)
    if j - 3 < 0 or j + 3 > U.shape[-1]:
        raise ConfigError(f"WENO-Z stencil around interface {j} leaves 0..{U.shape[-1] - 1}")
    Vm, Vp = characteristic_interface_arrays(U[:, j - 3 : j + 3], g, params)
    return InterfaceValues(
        minus=SWState(float(Vm[0, 0]), float(Vm[1, 0])),
        plus=SWState(float(Vp[0, 0]), float(Vp[1, 0])),
    )
