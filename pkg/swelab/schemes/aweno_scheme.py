from typing import Optional

import numpy as np

from ..boundary import BoundaryPolicy, extend
from ..grids import Grid1D
from ..models import WenoParams
from ..reconstruction import characteristic_interface_arrays, stencil_slices
from ..swe_model import FieldLike, as_array, flux_array
from .base import Scheme, SemiDiscreteRHS
from .cu_scheme import central_upwind_flux

# Six-point weights of the interface derivative approximations.
FXX_WEIGHTS = np.array([-5.0, 39.0, -34.0, -34.0, 39.0, -5.0]) / 48.0
FXXXX_WEIGHTS = np.array([1.0, -3.0, 2.0, 2.0, -3.0, 1.0]) / 2.0


def flux_second_derivative(F: np.ndarray, dx: float) -> np.ndarray:
    """Fourth-order (F_xx) at the n-5 inner interfaces of an extended flux array"""
    stencil = stencil_slices(F)
    return sum(w * s for w, s in zip(FXX_WEIGHTS, stencil)) / dx**2


def flux_fourth_derivative(F: np.ndarray, dx: float) -> np.ndarray:
    """Second-order (F_xxxx) on the same stencil"""
    stencil = stencil_slices(F)
    return sum(w * s for w, s in zip(FXXXX_WEIGHTS, stencil)) / dx**4


def aweno_numerical_flux(Ue: np.ndarray, dx: float, g: float, params: WenoParams, floor_at_zero: bool = True):
    """Corrected interface flux H - dx^2/24 F_xx + 7 dx^4/5760 F_xxxx and the speeds"""
    Vm, Vp = characteristic_interface_arrays(Ue, g, params)
    H, a_plus, a_minus = central_upwind_flux(Vm, Vp, g, anti_diffusion=True, floor_at_zero=floor_at_zero)
    F = flux_array(Ue, g)
    H_hat = H - dx**2 / 24.0 * flux_second_derivative(F, dx) + 7.0 * dx**4 / 5760.0 * flux_fourth_derivative(F, dx)
    return H_hat, a_plus, a_minus


def aweno_rhs_extended(
    Ue: np.ndarray, dx: float, g: float, params: Optional[WenoParams] = None, floor_at_zero: bool = True
) -> SemiDiscreteRHS:
    """Right-hand side of the n-6 interior cells of an array with three ghost cells per side"""
    H_hat, a_plus, a_minus = aweno_numerical_flux(Ue, dx, g, params or WenoParams(), floor_at_zero)
    dVdt = -(H_hat[..., 1:] - H_hat[..., :-1]) / dx
    return SemiDiscreteRHS(dVdt=dVdt, max_speed=float(np.max(np.maximum(a_plus, -a_minus))))


def aweno_rhs(
    point_values: FieldLike,
    grid: Grid1D,
    g: float,
    params: WenoParams,
    bc: BoundaryPolicy,
    floor_at_zero: bool = True,
) -> SemiDiscreteRHS:
    """
    Fifth-order A-WENO semi-discretisation of point values.

    Characteristic WENO-Z interface values feed a central-upwind flux with
    built-in anti-diffusion; the higher-order correction terms are finite
    differences of the point-value fluxes.
    """
    U = as_array(point_values)
    return aweno_rhs_extended(extend(U, bc, AwenoScheme.ghost_width), grid.dx, g, params, floor_at_zero)


class AwenoScheme(Scheme):
    """Characteristic WENO-Z + corrected central-upwind fluxes, evolved by SSP-RK3"""

    name = "aweno"
    representation = "point_value"
    ghost_width = 3

    def rhs_extended(self, Ue: np.ndarray, dx: float) -> SemiDiscreteRHS:
        return aweno_rhs_extended(Ue, dx, self.config.g, self.config.weno, self.config.floor_at_zero)
