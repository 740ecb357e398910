import logging

import numpy as np
import pytest

from swelab.benchmarks import get_example, make_initial
from swelab.config import CONVERGENCE_NU
from swelab.errors import CflViolation, ConfigError, NumericalFailure
from swelab.grids import Grid1D
from swelab.models import RBMConfig, SchemeConfig, StepPolicy
from swelab.schemes import SemiDiscreteRHS
from swelab.swe_model import SHOCK_RIGHT, as_array, max_wave_speed
from swelab.time_march import SSP_COEFFS, choose_dt, convergence_step_policy, march, planned_cfl, ssprk3_step

logger = logging.getLogger(__name__)


def test_ssp_coefficients_are_convex():
    for a, b in SSP_COEFFS:
        assert a >= 0 and b >= 0
        assert a + b == pytest.approx(1.0)
    assert [b for _, b in SSP_COEFFS] == pytest.approx([1.0, 0.25, 2.0 / 3.0])


def test_zero_rhs_leaves_state_untouched():
    W = np.array([[1.0, 2.0, 3.0], [0.1, 0.2, 0.3]]) / 3.0
    out = ssprk3_step(W, 0.0, 0.1, lambda V: np.zeros_like(V))
    np.testing.assert_array_equal(out, W)


def test_accepts_semi_discrete_rhs():
    W = np.array([1.0])
    out = ssprk3_step(W, 0.0, 0.5, lambda V: SemiDiscreteRHS(dVdt=np.full_like(V, 2.0), max_speed=0.0))
    assert out[0] == pytest.approx(2.0)


@pytest.mark.parametrize("lam, dt", [(-1.0, 0.1), (-1.3, 0.2), (0.5, 0.4)])
def test_linear_amplification(lam, dt):
    z = lam * dt
    out = ssprk3_step(np.array([1.0]), 0.0, dt, lambda W: lam * W)
    assert out[0] == pytest.approx(1 + z + z**2 / 2 + z**3 / 6, rel=1e-13)


def test_third_order_on_oscillator():
    A = np.array([[0.0, 1.0], [-1.0, 0.0]])
    errors = []
    for n in (10, 20, 40):
        W = np.array([1.0, 0.0])
        dt = 1.0 / n
        for step in range(n):
            W = ssprk3_step(W, step * dt, dt, lambda V: A @ V)
        errors.append(np.linalg.norm(W - np.array([np.cos(1.0), -np.sin(1.0)])))
    order = np.log2(errors[1] / errors[2])
    logger.info("SSP-RK3 order %.3f", order)
    assert order > 2.9


def test_stage_failures_carry_time_and_stage():
    def failing(V):
        raise NumericalFailure("boom")

    with pytest.raises(NumericalFailure) as info:
        ssprk3_step(np.ones(2), 0.75, 0.1, failing)
    assert info.value.time == 0.75
    assert info.value.stage == "ssprk3 stage 1"


def test_non_positive_step_rejected():
    with pytest.raises(ConfigError):
        ssprk3_step(np.ones(2), 0.0, 0.0, lambda V: V)


# ----------------------------------------------------------------------
# Step selection
# ----------------------------------------------------------------------

@pytest.fixture
def still_water():
    grid = Grid1D(0.0, 1.0, 100)
    return grid, np.tile(np.array([[2.5], [0.0]]), (1, grid.m))


def test_adaptive_step(still_water):
    grid, U = still_water
    dt = choose_dt(U, grid, 10.0, StepPolicy(mode="adaptive", cfl=0.5), 0.0, 1.0)
    assert dt == pytest.approx(0.001)


def test_fixed_pow_step(still_water):
    grid, U = still_water
    dt = choose_dt(U, grid, 10.0, StepPolicy(mode="fixed_pow", kappa=0.1, exponent=5 / 3), 0.0, 1.0)
    assert dt == pytest.approx(0.1 * 0.01 ** (5 / 3))


def test_step_lands_on_final_time(still_water):
    grid, U = still_water
    policy = StepPolicy(mode="fixed", dt=0.01)
    assert choose_dt(U, grid, 10.0, policy, 0.999, 1.0) == pytest.approx(0.001)
    assert choose_dt(U, grid, 10.0, policy, 0.5, 1.0) == 0.01


def test_adaptive_step_needs_wave_speed(still_water):
    grid, U = still_water
    with pytest.raises(ConfigError):
        choose_dt(U, grid, 0.0, StepPolicy(), 0.0, 1.0)


def test_convergence_step_policy():
    policy = convergence_step_policy("cu", 0.04, 0.01, 8.0)
    assert policy.mode == "fixed" and policy.dt == pytest.approx(0.25 * 0.01 / 8.0)
    policy = convergence_step_policy("aweno", 0.04, 0.01, 8.0)
    # CFL 1/2 on the coarse grid
    assert policy.dt * 8.0 / 0.01 ** (5 / 3) * 0.04 ** (2 / 3) == pytest.approx(0.5)
    with pytest.raises(ConfigError):
        convergence_step_policy("rbm", 0.04, 0.01, 0.0)


def test_step_policy_validation():
    with pytest.raises(ValueError):
        StepPolicy(mode="fixed")
    with pytest.raises(ValueError):
        StepPolicy(mode="fixed_pow")


# ----------------------------------------------------------------------
# Marching
# ----------------------------------------------------------------------

def test_march_to_time_zero_returns_initial_data():
    grid = Grid1D(0.0, 10.0, 50)
    U0 = make_initial(get_example(1), grid, "cell_average")
    record = march(U0, grid, "cu", StepPolicy(), 0.0)
    assert record.steps == 0
    np.testing.assert_array_equal(record.final, U0.as_array())


def test_march_hits_snapshot_times_exactly():
    grid = Grid1D(0.0, 10.0, 50)
    U0 = make_initial(get_example(2), grid, "point_value")
    record = march(U0, grid, "rbm", StepPolicy(mode="fixed", dt=0.013), 0.3, snapshot_times=(0.1, 0.2))
    assert sorted(record.snapshots) == [0.1, 0.2, 0.3]
    assert 0.1 in record.times and 0.2 in record.times
    assert record.times[-1] == 0.3


def test_march_rejects_unsorted_snapshots():
    grid = Grid1D(0.0, 10.0, 50)
    U0 = make_initial(get_example(2), grid, "point_value")
    with pytest.raises(ConfigError):
        march(U0, grid, "rbm", StepPolicy(), 0.3, snapshot_times=(0.2, 0.1))


@pytest.mark.parametrize("scheme, representation", [("cu", "cell_average"), ("aweno", "point_value")])
def test_isolated_shock_position(scheme, representation):
    example = get_example(3)
    grid = example.grid(200)
    U0 = make_initial(example, grid, representation)
    record = march(U0, grid, scheme, StepPolicy(), 1.0, bc=example.bc)
    h = record.final[0]
    mid = 0.5 * (1.0 + (-5.0 + 3.0 * np.sqrt(5.0)) / 10.0)
    k = int(np.argmax(h < mid))
    logger.info("%s shock crossing at x=%.4f", scheme, grid.centers[k])
    assert abs(grid.centers[k] - 6.0) < 2 * grid.dx


def test_simple_wave_steepens_near_predicted_location():
    example = get_example(1)
    grid = example.grid(1000)
    U0 = make_initial(example, grid, "cell_average")
    record = march(U0, grid, "cu", StepPolicy(), 0.5)
    k = int(np.argmax(np.abs(np.diff(record.final[0]))))
    assert abs(grid.interface(k + 1) - 6.25) < 0.3


def test_planned_cfl():
    grid = Grid1D(0.0, 10.0, 100)
    assert planned_cfl(StepPolicy(cfl=0.4), grid, 7.0) == 0.4
    assert planned_cfl(StepPolicy(mode="fixed", dt=0.01), grid, 5.0) == pytest.approx(0.5)
    policy = StepPolicy(mode="fixed_pow", kappa=0.2, exponent=2.0)
    assert planned_cfl(policy, grid, 5.0) == pytest.approx(0.2 * 0.1 * 5.0)


def test_rbm_planned_cfl_checked_before_marching():
    example = get_example(1)
    grid = example.grid(50)
    U0 = make_initial(example, grid, "point_value")
    a0 = max_wave_speed(as_array(U0), 10.0)
    policy = StepPolicy(mode="fixed", dt=0.6 * grid.dx / a0)

    with pytest.raises(CflViolation) as info:
        march(U0, grid, "rbm", policy, 0.5)
    assert info.value.stage == "rbm setup"
    assert info.value.time == 0.0

    # z = 0.6 lies inside the stability window of C = 2.8
    config = SchemeConfig(rbm=RBMConfig(C=2.8, cfl=0.6))
    record = march(U0, grid, "rbm", policy, 0.05, scheme_config=config)
    assert record.steps > 0


def test_rbm_isolated_shock_with_shared_fixed_step():
    example = get_example(3)
    grid = example.grid(100)
    U0 = make_initial(example, grid, "point_value")
    a0 = max_wave_speed(as_array(U0), 10.0)
    # the post-shock wave speed overshoots a0, so z rises above 0.25 during the run
    policy = StepPolicy(mode="fixed", dt=CONVERGENCE_NU * grid.dx / a0)
    record = march(U0, grid, "rbm", policy, 1.0, bc=example.bc)

    h = record.final[0]
    assert np.all(h > 0)
    mid = 0.5 * (1.0 + SHOCK_RIGHT[0])
    k = int(np.argmax(h < mid))
    logger.info("rbm shock crossing at x=%.4f after %d steps", grid.centers[k], record.steps)
    assert abs(grid.centers[k] - 6.0) < 3 * grid.dx
