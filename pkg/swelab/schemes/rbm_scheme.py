import math

import numpy as np

from ..boundary import BoundaryPolicy, extend, window_indices
from ..errors import CflViolation
from ..grids import Grid1D
from ..models import RBMConfig
from ..swe_model import FieldLike, SWField, as_array, check_depth, flux_array, max_wave_speed
from .base import Scheme

GHOST_WIDTH = 2
CFL_SLACK = 1e-12


def fourth_difference(Ue: np.ndarray) -> np.ndarray:
    """w_k = V_{k+2} - 4V_{k+1} + 6V_k - 4V_{k-1} + V_{k-2} for the cells 2..n-3"""
    return Ue[..., 4:] - 4.0 * Ue[..., 3:-1] + 6.0 * Ue[..., 2:-2] - 4.0 * Ue[..., 1:-3] + Ue[..., :-4]


def rbm_update_extended(Ue: np.ndarray, dx: float, dt: float, g: float, C: float) -> np.ndarray:
    """
    One three-stage RBM step for the n-4 interior cells of an extended array.

    Stage 1 puts provisional values at the interfaces (staggered), stage 2
    brings them back to the cells, stage 3 combines both flux sets and
    subtracts the fourth-difference viscosity.
    """
    lam = dt / dx
    F = flux_array(Ue, g)

    # V1[i] sits on the interface between extended cells i and i+1.
    V1 = 0.5 * (Ue[..., :-1] + Ue[..., 1:]) - lam / 3.0 * (F[..., 1:] - F[..., :-1])
    check_depth(V1, stage="rbm stage 1")
    F1 = flux_array(V1, g)

    # V2[i] belongs to extended cell i+1.
    V2 = Ue[..., 1:-1] - 2.0 * lam / 3.0 * (F1[..., 1:] - F1[..., :-1])
    check_depth(V2, stage="rbm stage 2")
    F2 = flux_array(V2, g)

    V_new = (
        Ue[..., 2:-2]
        - lam / 24.0 * (7.0 * (F[..., 3:-1] - F[..., 1:-3]) - 2.0 * (F[..., 4:] - F[..., :-4]))
        - 3.0 * lam / 8.0 * (F2[..., 2:] - F2[..., :-2])
        - C / 24.0 * fourth_difference(Ue)
    )
    check_depth(V_new, stage="rbm stage 3")
    return V_new


def stability_limit(C: float) -> float:
    """Largest CFL number z with z^2 (4 - z^2) <= C"""
    return math.sqrt(2.0 - math.sqrt(max(4.0 - C, 0.0)))


def check_rbm_cfl(U: np.ndarray, dx: float, dt: float, g: float, cfl: float, stage: str = "rbm") -> float:
    """Return z = dt*a/dx, raising CflViolation when it exceeds `cfl`"""
    z = dt * max_wave_speed(U, g) / dx
    if z > cfl * (1.0 + CFL_SLACK):
        raise CflViolation(f"CFL number {z:.6g} exceeds bound {cfl:g}", stage=stage)
    return z


def rbm_step_array(
    U: np.ndarray, dx: float, dt: float, g: float, config: RBMConfig, bc: BoundaryPolicy
) -> np.ndarray:
    check_depth(U, stage="rbm input")
    # config.cfl is checked against the planned step by the marchers; every
    # step must stay inside the window that C itself allows.
    check_rbm_cfl(U, dx, dt, g, stability_limit(config.C))
    return rbm_update_extended(extend(U, bc, GHOST_WIDTH), dx, dt, g, config.C)


def rbm_window_step(
    U: np.ndarray, cells: np.ndarray, dx: float, dt: float, g: float, config: RBMConfig, bc: BoundaryPolicy
) -> np.ndarray:
    """RBM step evaluated at `cells` only; returns a (2, len(cells)) array"""
    local = U[:, window_indices(cells, GHOST_WIDTH, U.shape[-1], bc)]
    check_rbm_cfl(local, dx, dt, g, stability_limit(config.C), stage="rbm window")
    return rbm_update_extended(local, dx, dt, g, config.C)[..., 0]


def rbm_step(
    point_values_at_t: FieldLike,
    grid: Grid1D,
    dt: float,
    g: float,
    config: RBMConfig,
    bc: BoundaryPolicy,
) -> SWField:
    """
    Advance RBM point values by one full time step.

    Args:
        point_values_at_t: point values (h, q) at the cell centres
        grid: the mesh
        dt: time step, checked against the stability limit of config.C
        g: acceleration due to gravity
        config: viscosity coefficient C and the CFL bound
        bc: ghost-cell policy

    Returns:
        The point values at t + dt
    """
    U = as_array(point_values_at_t)
    return SWField.from_array(rbm_step_array(U, grid.dx, dt, g, config, bc), kind="point_value")


class RBMScheme(Scheme):
    """Third-order fully discrete RBM scheme with fourth-order artificial viscosity"""

    name = "rbm"
    representation = "point_value"
    ghost_width = GHOST_WIDTH
    semi_discrete = False

    def step(self, U: np.ndarray, grid: Grid1D, dt: float, bc: BoundaryPolicy) -> np.ndarray:
        return rbm_step_array(U, grid.dx, dt, self.config.g, self.config.rbm, bc)
