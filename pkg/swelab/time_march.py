"""
Time integration of the base schemes.

Semi-discrete schemes (CU, A-WENO) are advanced by the three-stage SSP
Runge-Kutta method; RBM supplies its own fully discrete step. The step size
comes from a StepPolicy and the last step before every requested time is
clipped so that time is hit exactly.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Union

import numpy as np

from .boundary import BoundaryPolicy
from .config import CONVERGENCE_NU
from .errors import CflViolation, ConfigError, NumericalFailure
from .grids import Grid1D
from .models import SchemeConfig, StepPolicy
from .schemes import Scheme, SemiDiscreteRHS, get_scheme
from .swe_model import FieldLike, as_array, check_depth, max_wave_speed

logger = logging.getLogger(__name__)

# (weight of W^n, weight of the previous stage advanced by a forward-Euler step)
SSP_COEFFS = ((0.0, 1.0), (0.75, 0.25), (1.0 / 3.0, 2.0 / 3.0))

LANDING_TOL = 1e-12
CFL_SLACK = 1e-12
MILESTONE_STEPS = 1000

RHSOperator = Callable[[np.ndarray], Union[np.ndarray, SemiDiscreteRHS]]


def ssprk3_step(state: FieldLike, t: float, dt: float, rhs_operator: RHSOperator) -> np.ndarray:
    """
    One SSP-RK3 step W(t) -> W(t + dt).

    Each stage is W^n + b*((W^{k-1} - W^n) + dt*P[W^{k-1}]), which equals the
    convex combination a*W^n + b*(W^{k-1} + dt*P[W^{k-1}]) and leaves W
    untouched when P vanishes.
    """
    if not dt > 0:
        raise ConfigError(f"time step must be positive, got dt={dt}")
    W = as_array(state)
    stage = W
    for number, (_, b) in enumerate(SSP_COEFFS, start=1):
        try:
            P = rhs_operator(stage)
        except NumericalFailure as exc:
            if exc.stage is None:
                exc.stage = f"ssprk3 stage {number}"
            raise exc.with_time(t)
        P = getattr(P, "dVdt", P)
        stage = W + b * ((stage - W) + dt * P)
    return stage


def choose_dt(
    state: FieldLike,
    grid: Grid1D,
    g: float,
    policy: StepPolicy,
    t: float,
    t_final: float,
) -> float:
    """
    Next time step under `policy`, clipped so that t + dt never passes t_final.

    adaptive: cfl*dx/a with a = max(lambda_2, -lambda_1) over the cell values
    fixed: policy.dt
    fixed_pow: kappa*dx**exponent
    """
    if policy.mode == "adaptive":
        U = as_array(state)
        check_depth(U, stage="choose_dt")
        a = max_wave_speed(U, g)
        if not a > 0:
            raise ConfigError("stationary field has zero wave speed: use a fixed time step")
        dt = policy.cfl * grid.dx / a
    elif policy.mode == "fixed":
        dt = policy.dt
    else:
        dt = policy.kappa * grid.dx**policy.exponent

    remaining = t_final - t
    if dt >= remaining or remaining - dt <= LANDING_TOL * max(1.0, abs(t_final)):
        dt = remaining
    return dt


def planned_cfl(policy: StepPolicy, grid: Grid1D, a0: float) -> float:
    """CFL number the policy aims at on data with wave speed a0"""
    if policy.mode == "adaptive":
        return policy.cfl
    dt = policy.dt if policy.mode == "fixed" else policy.kappa * grid.dx**policy.exponent
    return dt * a0 / grid.dx


def check_planned_cfl(initial: FieldLike, grid: Grid1D, g: float, policy: StepPolicy, bound: float, stage: str) -> float:
    """
    Check the policy's CFL number on the initial data against a configured bound.

    Done once before marching; per step the schemes check only their hard
    stability limits.
    """
    z = planned_cfl(policy, grid, max_wave_speed(as_array(initial), g))
    if z > bound * (1.0 + CFL_SLACK):
        raise CflViolation(f"planned CFL number {z:.6g} exceeds configured bound {bound:g}", stage=stage, time=0.0)
    return z


@dataclass
class TrajectoryRecord:
    """Visited times and the snapshots stored at the requested ones"""
    times: List[float] = field(default_factory=list)
    snapshots: Dict[float, np.ndarray] = field(default_factory=dict)
    steps: int = 0

    @property
    def final(self) -> np.ndarray:
        return self.snapshots[max(self.snapshots)]


def advance(scheme: Scheme, U: np.ndarray, grid: Grid1D, dt: float, t: float, bc: BoundaryPolicy) -> np.ndarray:
    """One step of any base scheme"""
    if scheme.semi_discrete:
        return ssprk3_step(U, t, dt, lambda W: scheme.rhs(W, grid, bc))
    return scheme.step(U, grid, dt, bc)


def _targets(snapshot_times: Sequence[float], t_final: float) -> List[float]:
    times = [float(s) for s in snapshot_times]
    if any(b < a for a, b in zip(times, times[1:])):
        raise ConfigError(f"snapshot times must be sorted: {times}")
    if times and (times[0] < 0 or times[-1] > t_final):
        raise ConfigError(f"snapshot times must lie in [0, {t_final}]: {times}")
    if not times or times[-1] != t_final:
        times.append(float(t_final))
    return times


def march(
    initial: FieldLike,
    grid: Grid1D,
    scheme: str,
    policy: StepPolicy,
    t_final: float,
    snapshot_times: Sequence[float] = (),
    scheme_config: Optional[SchemeConfig] = None,
    bc: BoundaryPolicy = "periodic",
) -> TrajectoryRecord:
    """
    Advance `initial` from t = 0 to t_final with one base scheme.

    Args:
        initial: starting field in the scheme's representation
        grid: the mesh
        scheme: "cu", "rbm" or "aweno"
        policy: time-step policy
        t_final: final time
        snapshot_times: sorted times (<= t_final) at which to store the field
        scheme_config: physics and scheme parameters
        bc: ghost-cell policy

    Returns:
        TrajectoryRecord with every visited time and the requested snapshots;
        t_final is always stored.
    """
    config = scheme_config or SchemeConfig()
    solver = get_scheme(scheme, config)
    targets = _targets(snapshot_times, t_final)

    U = as_array(initial).copy()
    check_depth(U, stage="initial data")
    if not solver.semi_discrete:
        check_planned_cfl(U, grid, config.g, policy, config.rbm.cfl, stage=f"{scheme} setup")
    t = 0.0
    record = TrajectoryRecord(times=[t])

    for target in targets:
        while t < target:
            dt = choose_dt(U, grid, config.g, policy, t, target)
            try:
                U = advance(solver, U, grid, dt, t, bc)
            except NumericalFailure as exc:
                raise exc.with_time(t)
            t = target if dt == target - t else t + dt
            record.times.append(t)
            record.steps += 1
            if record.steps % MILESTONE_STEPS == 0:
                logger.debug("%s: %d steps, t=%.6g", scheme, record.steps, t)
        record.snapshots[target] = U.copy()

    logger.info("%s on %d cells reached t=%g in %d steps", scheme, grid.m, t, record.steps)
    return record


def convergence_step_policy(scheme: str, dx_coarse: float, dx_fine: float, a0: float) -> StepPolicy:
    """
    Shared fixed step for the three grids of a convergence study.

    CU and RBM: dt = nu*dx_fine/a0. A-WENO: dt = kappa*dx_fine**(5/3) with
    kappa chosen so that the coarsest grid runs at CFL 1/2; the step is then
    frozen so all three grids use the same value.
    """
    if not a0 > 0:
        raise ConfigError("initial data has zero wave speed: give dt explicitly")
    if scheme == "aweno":
        exponent = 5.0 / 3.0
        kappa = 0.5 / (a0 * dx_coarse ** (exponent - 1.0))
        return StepPolicy(mode="fixed", dt=kappa * dx_fine**exponent)
    return StepPolicy(mode="fixed", dt=CONVERGENCE_NU * dx_fine / a0)
