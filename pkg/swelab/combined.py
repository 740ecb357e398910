"""
Combined schemes: RBM everywhere, CU or A-WENO near shocks.

The basic RBM solution is evolved on the whole domain and never modified.
Each step its weak local residual (WLR) marks the rough cells, where an
internal CU or A-WENO solution is evolved by SSP-RK3 with its stencils fed
from the basic solution at t^n, t^{n+1/2} and t^{n+1}. The exported solution
is the basic one with the internal values pasted over the rough cells.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Literal, Optional, Sequence

import numpy as np

from .boundary import BoundaryPolicy, dilate, extend, window_indices
from .errors import ConfigError, CflViolation, NumericalFailure
from .grids import Grid1D
from .models import SchemeConfig, StepPolicy
from .schemes import AwenoScheme, CentralUpwindScheme
from .schemes.rbm_scheme import CFL_SLACK, rbm_step_array, rbm_window_step
from .swe_model import FieldLike, as_array, check_depth, flux_array, max_wave_speed
from .time_march import SSP_COEFFS, _targets, check_planned_cfl, choose_dt

logger = logging.getLogger(__name__)

InternalKind = Literal["cu", "aweno"]

INTERNAL_SCHEMES = {"cu": CentralUpwindScheme, "aweno": AwenoScheme}
INTERNAL_CFL = 0.5
# hard per-step bound for the internal SSP-RK3 stages
INTERNAL_CFL_LIMIT = 1.0
DETECTION_COMPONENT = 0
# steps more unequal than this keep the previous rough set
STEP_RATIO_LIMIT = 2.0


@dataclass(frozen=True)
class WLRField:
    """Residual vectors E per cell and the 3-point max of |E| in the detection component"""
    E: np.ndarray
    eps: np.ndarray


@dataclass(frozen=True)
class RoughSet:
    """Boolean masks over the cells: core, core widened by the stencil radius, and their difference"""
    core: np.ndarray
    halo: np.ndarray
    boundary_belt: np.ndarray

    @property
    def core_indices(self) -> np.ndarray:
        return np.flatnonzero(self.core)

    @property
    def halo_indices(self) -> np.ndarray:
        return np.flatnonzero(self.halo)

    @property
    def belt_indices(self) -> np.ndarray:
        return np.flatnonzero(self.boundary_belt)

    @property
    def empty(self) -> bool:
        return not self.core.any()

    @classmethod
    def nowhere(cls, m: int) -> "RoughSet":
        empty = np.zeros(m, dtype=bool)
        return cls(core=empty, halo=empty.copy(), boundary_belt=empty.copy())


def time_weights(dt_prev: float, dt: float):
    """
    Three-point weights of the integral over [t^{n-1}, t^{n+1}] with steps
    dt_prev then dt; exact for quadratics, (1, 4, 1)*dt/3 for equal steps.
    """
    span = dt_prev + dt
    return (
        span * (2.0 * dt_prev - dt) / (6.0 * dt_prev),
        span**3 / (6.0 * dt_prev * dt),
        span * (2.0 * dt - dt_prev) / (6.0 * dt),
    )


def weak_local_residual(
    V_prev: FieldLike,
    V_now: FieldLike,
    V_next: FieldLike,
    dx: float,
    dt: float,
    g: float,
    bc: BoundaryPolicy = "periodic",
    component: int = DETECTION_COMPONENT,
    dt_prev: Optional[float] = None,
) -> WLRField:
    """
    WLR of three consecutive time levels.

    With equal steps dt,
    E_k = ([dV_{k+1} + 4 dV_k + dV_{k-1}] dx
           + [S_{k+1} - S_{k-1}] dt) / 12,
    with dV = V^{n+1} - V^{n-1} and S = F^{n+1} + 4 F^n + F^{n-1}. A different
    previous step dt_prev replaces dt*S/3 by the matching quadratic weights.
    """
    Vp, Vn, Vx = as_array(V_prev), as_array(V_now), as_array(V_next)
    if not Vp.shape == Vn.shape == Vx.shape:
        raise ConfigError(f"WLR time levels differ in shape: {Vp.shape}, {Vn.shape}, {Vx.shape}")
    for level, V in (("n-1", Vp), ("n", Vn), ("n+1", Vx)):
        check_depth(V, stage=f"wlr level {level}")

    dV = extend(Vx - Vp, bc, 1)
    if dt_prev is None or dt_prev == dt:
        S = extend(flux_array(Vx, g) + 4.0 * flux_array(Vn, g) + flux_array(Vp, g), bc, 1) * (dt / 3.0)
    else:
        w_prev, w_now, w_next = time_weights(dt_prev, dt)
        S = extend(w_next * flux_array(Vx, g) + w_now * flux_array(Vn, g) + w_prev * flux_array(Vp, g), bc, 1)
    E = ((dV[..., 2:] + 4.0 * dV[..., 1:-1] + dV[..., :-2]) * dx / 3.0 + (S[..., 2:] - S[..., :-2])) / 4.0

    magnitude = extend(np.abs(E[component]), bc, 1)
    eps = np.maximum(np.maximum(magnitude[:-2], magnitude[1:-1]), magnitude[2:])
    return WLRField(E=E, eps=eps)


def detect_rough(
    wlr: WLRField, mu: float, dx: float, stencil_radius: int, bc: BoundaryPolicy = "periodic"
) -> RoughSet:
    """Cells with eps > mu*dx^3, widened by the internal stencil radius"""
    if not mu > 0:
        raise ConfigError(f"rough-set threshold factor must be positive, got mu={mu}")
    core = wlr.eps > mu * dx**3
    halo = dilate(core, stencil_radius, bc)
    return RoughSet(core=core, halo=halo, boundary_belt=halo & ~core)


@dataclass(frozen=True)
class CombinedState:
    """
    Everything a combined step carries between time levels.

    V_prev/V_now are the basic RBM solution at t^{n-1}/t^n (V_prev is None
    before the first step). W holds internal values where W_mask is set.
    """
    V_now: np.ndarray
    t: float = 0.0
    V_prev: Optional[np.ndarray] = None
    W: Optional[np.ndarray] = None
    W_mask: Optional[np.ndarray] = None
    export: Optional[np.ndarray] = None
    rough: Optional[RoughSet] = None
    internal_kind: InternalKind = "cu"
    mu: float = 0.2
    steps: int = 0
    dt_prev: Optional[float] = None

    @classmethod
    def start(cls, initial: FieldLike, internal_kind: InternalKind, mu: float) -> "CombinedState":
        if internal_kind not in INTERNAL_SCHEMES:
            raise ConfigError(f"Unknown internal scheme: {internal_kind}")
        V = as_array(initial).copy()
        check_depth(V, stage="initial data")
        return cls(
            V_now=V,
            W=V.copy(),
            W_mask=np.zeros(V.shape[-1], dtype=bool),
            export=V.copy(),
            internal_kind=internal_kind,
            mu=mu,
        )

    @property
    def solution(self) -> np.ndarray:
        return self.export if self.export is not None else self.V_now


def _internal_rhs(scheme, X: np.ndarray, cells: np.ndarray, grid: Grid1D, bc: BoundaryPolicy) -> np.ndarray:
    """Internal right-hand side at `cells` only, from local stencil windows of X"""
    windows = window_indices(cells, scheme.ghost_width, grid.m, bc)
    # (2, K, 2r+1) -> (2, K, 1)
    return scheme.rhs_extended(X[:, windows], grid.dx).dVdt[..., 0]


def combined_step(
    state: CombinedState,
    dt: float,
    grid: Grid1D,
    config: Optional[SchemeConfig] = None,
    bc: BoundaryPolicy = "periodic",
) -> CombinedState:
    """
    Advance the combined solution by dt.

    The first step only advances the basic solution, since the WLR needs
    three time levels. Afterwards the internal solution is evolved on the
    rough core plus one cell, with its SSP-RK3 stages bordered by the basic
    values at t^{n+1} (stage 1) and t^{n+1/2} (stage 2). A step more than
    STEP_RATIO_LIMIT times longer or shorter than its predecessor reuses
    the previous rough set.
    """
    config = config or SchemeConfig()
    g = config.g
    V_now = state.V_now
    t_next = state.t + dt

    try:
        V_next = rbm_step_array(V_now, grid.dx, dt, g, config.rbm, bc)
    except NumericalFailure as exc:
        raise exc.with_time(state.t)

    if state.V_prev is None:
        return replace(
            state,
            V_prev=V_now,
            V_now=V_next,
            export=V_next.copy(),
            W_mask=np.zeros(grid.m, dtype=bool),
            t=t_next,
            steps=state.steps + 1,
            dt_prev=dt,
        )

    scheme = INTERNAL_SCHEMES[state.internal_kind](config)
    dt_prev = state.dt_prev if state.dt_prev is not None else dt
    if not 1.0 / STEP_RATIO_LIMIT <= dt / dt_prev <= STEP_RATIO_LIMIT:
        rough = state.rough if state.rough is not None else RoughSet.nowhere(grid.m)
    else:
        wlr = weak_local_residual(state.V_prev, V_now, V_next, grid.dx, dt, g, bc, dt_prev=dt_prev)
        rough = detect_rough(wlr, state.mu, grid.dx, scheme.ghost_width, bc)

    if rough.empty:
        return replace(
            state,
            V_prev=V_now,
            V_now=V_next,
            W=V_next.copy(),
            W_mask=np.zeros(grid.m, dtype=bool),
            export=V_next.copy(),
            rough=rough,
            t=t_next,
            steps=state.steps + 1,
            dt_prev=dt,
        )

    evolve = dilate(rough.core, 1, bc)
    cells = np.flatnonzero(evolve)
    # Cells that just became rough are seeded from the basic solution.
    X0 = np.where(state.W_mask & evolve, state.W, V_now)

    z = dt * max_wave_speed(X0[:, cells], g) / grid.dx
    if z > INTERNAL_CFL_LIMIT * (1.0 + CFL_SLACK):
        raise CflViolation(
            f"CFL number {z:.6g} exceeds internal bound {INTERNAL_CFL_LIMIT:g}", stage="internal scheme", time=state.t
        )

    # The last stage reads the half-step values up to one cell beyond the halo.
    half_cells = np.flatnonzero(dilate(rough.halo, 1, bc))
    V_half = V_next.copy()
    try:
        V_half[:, half_cells] = rbm_window_step(V_now, half_cells, grid.dx, 0.5 * dt, g, config.rbm, bc)
    except NumericalFailure as exc:
        raise exc.with_time(state.t)

    try:
        borders = (V_next, V_half, None)
        X = X0
        for number, ((_, b), border) in enumerate(zip(SSP_COEFFS, borders), start=1):
            P = _internal_rhs(scheme, X, cells, grid, bc)
            inner = X0[:, cells] + b * ((X[:, cells] - X0[:, cells]) + dt * P)
            X = (border if border is not None else V_next).copy()
            X[:, cells] = inner
            check_depth(inner, stage=f"internal stage {number}")
    except NumericalFailure as exc:
        if exc.index is not None and exc.index < len(cells):
            exc.index = int(cells[exc.index])
        raise exc.with_time(state.t)

    export = V_next.copy()
    export[:, rough.core] = X[:, rough.core]
    return replace(
        state,
        V_prev=V_now,
        V_now=V_next,
        W=X,
        W_mask=evolve,
        export=export,
        rough=rough,
        t=t_next,
        steps=state.steps + 1,
        dt_prev=dt,
    )


@dataclass
class CombinedTrajectory:
    """Exported and basic snapshots of a combined run, plus the rough-core sizes per step"""
    times: List[float] = field(default_factory=list)
    snapshots: Dict[float, np.ndarray] = field(default_factory=dict)
    basic_snapshots: Dict[float, np.ndarray] = field(default_factory=dict)
    core_sizes: List[int] = field(default_factory=list)
    steps: int = 0

    @property
    def final(self) -> np.ndarray:
        return self.snapshots[max(self.snapshots)]


def march_combined(
    initial: FieldLike,
    grid: Grid1D,
    internal_kind: InternalKind,
    policy: StepPolicy,
    t_final: float,
    snapshot_times: Sequence[float] = (),
    scheme_config: Optional[SchemeConfig] = None,
    bc: BoundaryPolicy = "periodic",
) -> CombinedTrajectory:
    """
    Run an RBM-CU or RBM-A-WENO combined scheme to t_final.

    Steps clipped onto a snapshot time enter the WLR with unequal time
    weights; a clipped step that differs too much from its predecessor keeps
    the previous rough set. The planned CFL number on the initial data must
    respect both the RBM bound in the config and the internal bound of 1/2.
    """
    config = scheme_config or SchemeConfig()
    targets = _targets(snapshot_times, t_final)
    state = CombinedState.start(initial, internal_kind, config.mu)
    check_planned_cfl(state.V_now, grid, config.g, policy, config.rbm.cfl, stage="rbm setup")
    check_planned_cfl(state.V_now, grid, config.g, policy, INTERNAL_CFL, stage=f"{internal_kind} setup")
    record = CombinedTrajectory(times=[0.0])

    for target in targets:
        while state.t < target:
            dt = choose_dt(state.V_now, grid, config.g, policy, state.t, target)
            landing = dt == target - state.t
            state = combined_step(state, dt, grid, config, bc)
            if landing:
                state = replace(state, t=target)
            record.times.append(state.t)
            record.core_sizes.append(0 if state.rough is None else int(state.rough.core.sum()))
            record.steps += 1
        record.snapshots[target] = state.solution.copy()
        record.basic_snapshots[target] = state.V_now.copy()

    logger.info(
        "rbm-%s on %d cells reached t=%g in %d steps, largest rough core %d cells",
        internal_kind,
        grid.m,
        state.t,
        record.steps,
        max(record.core_sizes, default=0),
    )
    return record
