import logging
from dataclasses import replace

import numpy as np
import pytest

from swelab.benchmarks import get_example, make_initial
from swelab.combined import (
    CombinedState,
    WLRField,
    combined_step,
    detect_rough,
    march_combined,
    weak_local_residual,
)
from swelab.errors import ConfigError
from swelab.grids import Grid1D
from swelab.models import SchemeConfig, StepPolicy
from swelab.swe_model import isolated_shock_arrays, max_wave_speed, simple_wave_exact
from swelab.time_march import march

logger = logging.getLogger(__name__)

G = 10.0


def levels(exact, grid, t, dt):
    return [np.stack(exact(grid.centers, s)) for s in (t - dt, t, t + dt)]


def test_wlr_of_constant_state_vanishes():
    U = np.tile(np.array([[2.0], [0.4]]), (1, 20))
    wlr = weak_local_residual(U, U, U, 0.1, 0.01, G)
    assert np.max(np.abs(wlr.E)) < 1e-14
    assert wlr.eps.shape == (20,)


def test_wlr_rejects_mismatched_levels():
    U = np.ones((2, 10))
    with pytest.raises(ConfigError):
        weak_local_residual(U, U, np.ones((2, 11)), 0.1, 0.01, G)


def test_wlr_is_small_on_smooth_solutions():
    sizes = []
    for m in (100, 200):
        grid = Grid1D(0.0, 10.0, m)
        dt = 0.25 * grid.dx
        wlr = weak_local_residual(*levels(lambda x, s: simple_wave_exact(x, s, G), grid, 0.3, dt), grid.dx, dt, G)
        sizes.append(np.max(np.abs(wlr.E[0])))
    exponent = np.log2(sizes[0] / sizes[1])
    logger.info("smooth WLR exponent %.3f", exponent)
    assert exponent >= 4.0


def test_wlr_is_order_dx_at_a_shock():
    sizes = []
    for m in (100, 200):
        grid = Grid1D(0.0, 10.0, m)
        dt = 0.25 * grid.dx
        wlr = weak_local_residual(
            *levels(lambda x, s: isolated_shock_arrays(x, s, G), grid, 1.0, dt), grid.dx, dt, G, bc="free"
        )
        E = np.abs(wlr.E[0])
        k = int(np.argmax(E))
        assert abs(grid.centers[k] - 6.0) <= 3 * grid.dx
        sizes.append(E[k])
    assert np.log2(sizes[0] / sizes[1]) == pytest.approx(1.0, abs=0.05)


def test_detect_rough_empty():
    wlr = WLRField(E=np.zeros((2, 30)), eps=np.zeros(30))
    rough = detect_rough(wlr, 0.2, 0.1, 3)
    assert rough.empty
    assert not rough.halo.any()


def test_detect_rough_halo_width():
    eps = np.zeros(30)
    eps[15] = 1.0
    rough = detect_rough(WLRField(E=np.zeros((2, 30)), eps=eps), 0.2, 0.1, 3)
    np.testing.assert_array_equal(rough.core_indices, [15])
    np.testing.assert_array_equal(rough.halo_indices, np.arange(12, 19))
    assert len(rough.belt_indices) == 6
    assert np.all(rough.halo[rough.core])


def test_detect_rough_threshold_factor():
    with pytest.raises(ConfigError):
        detect_rough(WLRField(E=np.zeros((2, 4)), eps=np.zeros(4)), 0.0, 0.1, 2)


def fixed_policy(grid, U0):
    return StepPolicy(mode="fixed", dt=0.25 * grid.dx / max_wave_speed(U0, G))


@pytest.mark.parametrize("internal", ["cu", "aweno"])
def test_basic_solution_is_pure_rbm(internal):
    example = get_example(4)
    grid = example.grid(200)
    U0 = make_initial(example, grid, "point_value").as_array()
    policy = fixed_policy(grid, U0)
    config = SchemeConfig(mu=example.mu)
    combined = march_combined(U0, grid, internal, policy, 1.0, scheme_config=config)
    basic = march(U0, grid, "rbm", policy, 1.0, scheme_config=config)
    assert max(combined.core_sizes) > 0
    np.testing.assert_array_equal(combined.basic_snapshots[1.0], basic.snapshots[1.0])
    assert not np.array_equal(combined.snapshots[1.0], basic.snapshots[1.0])


def test_smooth_flow_exports_the_basic_solution():
    example = get_example(4)
    grid = example.grid(200)
    U0 = make_initial(example, grid, "point_value").as_array()
    record = march_combined(U0, grid, "cu", fixed_policy(grid, U0), 0.1, scheme_config=SchemeConfig(mu=example.mu))
    assert max(record.core_sizes) == 0
    np.testing.assert_array_equal(record.snapshots[0.1], record.basic_snapshots[0.1])


def test_bootstrap_step_has_no_correction():
    grid = Grid1D(0.0, 10.0, 50)
    U0 = make_initial(get_example(4), grid, "point_value").as_array()
    state = combined_step(CombinedState.start(U0, "cu", 0.2), 0.01, grid)
    assert state.rough is None
    assert state.steps == 1
    np.testing.assert_array_equal(state.V_prev, U0)
    np.testing.assert_array_equal(state.solution, state.V_now)


def test_unknown_internal_scheme():
    with pytest.raises(ConfigError):
        CombinedState.start(np.ones((2, 10)), "rbm", 0.2)


def total_variation(h):
    return float(np.sum(np.abs(np.diff(h))))


def core_segment(core, k):
    """Contiguous run of core cells containing k and k + 1"""
    lo, hi = k, k + 1
    while lo > 0 and core[lo - 1]:
        lo -= 1
    while hi < len(core) - 1 and core[hi + 1]:
        hi += 1
    return lo, hi


def test_internal_scheme_removes_oscillations_at_the_shock():
    example = get_example(4)
    grid = example.grid(400)
    U0 = make_initial(example, grid, "point_value").as_array()
    config = SchemeConfig(mu=example.mu)
    dt = 0.25 * grid.dx / max_wave_speed(U0, G)
    state = CombinedState.start(U0, "cu", config.mu)
    while state.t < 1.0:
        step = min(dt, 1.0 - state.t)
        state = combined_step(state, step, grid, config)
    h = state.solution[0]
    k = int(np.argmax(np.abs(np.diff(h))))
    assert state.rough.core[k] and state.rough.core[k + 1]

    lo, hi = core_segment(state.rough.core, k)
    segment = slice(lo, hi + 1)
    jump = abs(h[hi] - h[lo])
    tv_combined = total_variation(h[segment])
    tv_basic = total_variation(state.V_now[0][segment])
    logger.info("core [%d, %d]: TV %.4f (basic %.4f), jump %.4f", lo, hi, tv_combined, tv_basic, jump)
    assert tv_combined <= 1.05 * jump
    assert tv_basic > tv_combined


def test_landing_step_reaches_snapshot_time():
    example = get_example(6)
    grid = example.grid(100)
    U0 = make_initial(example, grid, "point_value").as_array()
    record = march_combined(
        U0, grid, "aweno", StepPolicy(mode="fixed", dt=0.004), 0.5, snapshot_times=(0.25,),
        scheme_config=SchemeConfig(mu=example.mu), bc=example.bc,
    )
    assert sorted(record.snapshots) == [0.25, 0.5]
    assert record.times[-1] == 0.5
    assert len(record.core_sizes) == record.steps


@pytest.mark.parametrize("internal", ["cu", "aweno"])
def test_isolated_shock_combined_run(internal):
    example = get_example(6)
    grid = example.grid(200)
    U0 = make_initial(example, grid, "point_value").as_array()
    config = SchemeConfig(mu=example.mu)
    dt = fixed_policy(grid, U0).dt
    state = CombinedState.start(U0, internal, config.mu)
    while state.t < 1.0:
        state = combined_step(state, min(dt, 1.0 - state.t), grid, config, example.bc)

    h = state.solution[0]
    assert np.all(h > 0)
    assert not state.rough.empty
    k = int(np.argmax(np.abs(np.diff(h))))
    assert abs(grid.interface(k + 1) - 6.0) < 3 * grid.dx
    assert state.rough.core[k] and state.rough.core[k + 1]

    lo, hi = core_segment(state.rough.core, k)
    segment = slice(lo, hi + 1)
    jump = abs(h[hi] - h[lo])
    tv_combined = total_variation(h[segment])
    tv_basic = total_variation(state.V_now[0][segment])
    logger.info("rbm-%s core [%d, %d]: TV %.4f (basic %.4f), jump %.4f", internal, lo, hi, tv_combined, tv_basic, jump)
    assert tv_combined <= 1.2 * jump
    assert tv_basic > tv_combined
