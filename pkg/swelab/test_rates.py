import logging

import numpy as np
import pytest

from swelab.errors import ConfigError, NumericalFailure
from swelab.grids import Grid1D
from swelab.rates import (
    TripleSample,
    antiderivative_sequence,
    averaged_rate,
    integral_rates,
    interface_point_value,
    l1_norm,
    quadrature_L,
    rates_vs_exact,
    relative_error_field,
    report_stride,
    runge_pointwise,
    runge_ratio_rate,
    subsample,
    w11_rate,
)

logger = logging.getLogger(__name__)


@pytest.mark.parametrize("p", range(6))
def test_quadrature_exact_to_degree_five(p):
    dx = 0.3
    x0 = 1.7
    nodes = x0 + dx * np.arange(-2.0, 3.0)
    exact = ((x0 + dx / 2) ** (p + 1) - (x0 - dx / 2) ** (p + 1)) / (p + 1)
    assert quadrature_L(nodes**p, dx) == pytest.approx(exact, rel=1e-12, abs=1e-14)


def test_quadrature_examples():
    assert quadrature_L([1.0] * 5, 0.5) == pytest.approx(0.5)
    assert quadrature_L(np.arange(-2.0, 3.0) ** 2, 1.0) == pytest.approx(1.0 / 12.0)
    assert quadrature_L(np.arange(-2.0, 3.0) ** 5, 1.0) == pytest.approx(0.0, abs=1e-13)
    with pytest.raises(ConfigError):
        quadrature_L([1.0] * 4, 1.0)


@pytest.mark.parametrize("p", [1, 2, 3, 5])
def test_runge_rate_recovers_exponent(p):
    c = 1.0 + np.linspace(0.0, 1.0, 11) ** 2
    sample = TripleSample(coarse=c * 0.1**p, mid=c * 0.05**p, fine=c * 0.025**p)
    np.testing.assert_allclose(runge_pointwise(sample), p, atol=1e-10)


def test_runge_rate_from_differences():
    # V^N - V^2N = 1, V^2N - V^4N = 0.25
    sample = TripleSample(coarse=np.array([2.25]), mid=np.array([1.25]), fine=np.array([1.0]))
    assert runge_pointwise(sample)[0] == pytest.approx(2.0)


def test_undefined_rates_are_flagged():
    r = runge_ratio_rate(np.array([1e-3, 0.0, 1.0]), np.array([0.0, 0.0, 1e-20]))
    assert np.all(np.isnan(r))


def test_triple_sample_lengths():
    with pytest.raises(ConfigError):
        TripleSample(coarse=np.zeros(3), mid=np.zeros(3), fine=np.zeros(4))
    with pytest.raises(ConfigError):
        TripleSample.from_levels(np.zeros(3), np.zeros(5), np.zeros(8))
    sample = TripleSample.from_levels(np.arange(3.0), np.arange(5.0), np.arange(9.0))
    np.testing.assert_array_equal(sample.mid, [0, 2, 4])
    np.testing.assert_array_equal(sample.fine, [0, 4, 8])


def test_averaged_rate_of_constant_rates():
    np.testing.assert_allclose(averaged_rate(np.full(41, 2.0)), 2.0)
    np.testing.assert_allclose(averaged_rate(np.full(41, 2.0), bc="clamped"), 2.0)


def test_averaged_rate_dilutes_outlier():
    r = np.full(101, 3.0)
    r[50] = 10.0
    r_ave = averaged_rate(r)
    assert r_ave[50] == pytest.approx(3.0 + 7.0 / 25.0)
    assert r_ave[0] == pytest.approx(3.0)


def test_averaged_rate_skips_undefined():
    r = np.full(41, 1.5)
    r[::3] = np.nan
    np.testing.assert_allclose(averaged_rate(r), 1.5)


def test_averaged_rate_wraps_periodically():
    N = 40
    r = np.arange(N + 1, dtype=float)
    r[N] = r[0]
    r_ave = averaged_rate(r)
    window = np.concatenate([r[N - 12 : N], r[0:13]])
    assert r_ave[0] == pytest.approx(window.mean())
    assert r_ave[N] == r_ave[0]
    with pytest.raises(ConfigError):
        averaged_rate(r, bc="reflective")


@pytest.mark.parametrize("scheme", ["cu", "rbm"])
def test_antiderivative_of_constant(scheme):
    grid = Grid1D(0.0, 10.0, 40)
    U = np.stack([np.full(grid.m, 3.0), np.zeros(grid.m)])
    I = antiderivative_sequence(U, grid, 10, scheme)
    np.testing.assert_allclose(I, 3.0 * Grid1D(0.0, 10.0, 10).interfaces, rtol=1e-13, atol=1e-13)
    with pytest.raises(ConfigError):
        antiderivative_sequence(U, grid, 7, scheme)


def test_antiderivative_order_from_point_values():
    coarse = Grid1D(0.0, 10.0, 10)
    exact = 2.0 * coarse.interfaces - (5.0 / np.pi) * (np.cos(np.pi * coarse.interfaces / 5.0) - 1.0)
    errors = []
    for m in (40, 80):
        grid = Grid1D(0.0, 10.0, m)
        U = np.stack([2.0 + np.sin(np.pi * grid.centers / 5.0), np.zeros(m)])
        I = antiderivative_sequence(U, grid, 10, "aweno")
        errors.append(np.max(np.abs(I - exact)))
    order = np.log2(errors[0] / errors[1])
    logger.info("anti-derivative order %.3f", order)
    assert order > 5.5


def test_integral_rates():
    x = np.linspace(0.0, 1.0, 6)
    I_exact = np.sin(x)
    rates = integral_rates(I_exact + 0.1**2 * x, I_exact + 0.05**2 * x, I_exact + 0.025**2 * x)
    assert np.isnan(rates[0])
    np.testing.assert_allclose(rates[1:], 2.0, atol=1e-10)


def test_w11_rate():
    x = np.linspace(0.0, 1.0, 11)
    psi = np.cos(x)
    rate, (e1, e2) = w11_rate(psi + 0.1**3, psi + 0.05**3, psi + 0.025**3, 0.1)
    assert rate == pytest.approx(3.0, abs=1e-8)
    assert e1 == pytest.approx(0.1 * 10 * (0.1**3 - 0.05**3))
    # shifting all three sequences by one constant changes nothing
    shifted, _ = w11_rate(psi + 5.0 + 0.1**3, psi + 5.0 + 0.05**3, psi + 5.0 + 0.025**3, 0.1)
    assert shifted == pytest.approx(rate, abs=1e-6)


def test_l1_norm_skips_first_entry():
    assert l1_norm(np.array([100.0, 1.0, -2.0]), 0.5) == pytest.approx(1.5)


def test_interface_point_value_of_linear_field():
    grid = Grid1D(0.0, 10.0, 20)
    U = np.stack([2.0 + 0.1 * grid.centers, np.full(grid.m, 0.3)])
    for scheme in ("cu", "rbm"):
        assert interface_point_value(U, grid, 6, scheme, 10.0, bc="free") == pytest.approx(2.3, abs=1e-12)
    with pytest.raises(ConfigError):
        interface_point_value(U, grid, 21, "cu", 10.0)


def test_rates_vs_exact_on_exact_data():
    coarse = Grid1D(0.0, 10.0, 20)
    fine = coarse.refined(2)
    U_coarse = np.stack([np.ones(coarse.m), np.zeros(coarse.m)])
    U_fine = np.stack([np.ones(fine.m), np.zeros(fine.m)])
    report = rates_vs_exact(
        U_coarse, U_fine, coarse, "cu",
        lambda x: (np.ones_like(x), np.zeros_like(x)),
        lambda x: np.asarray(x, dtype=float),
        10.0, 1.0,
    )
    assert all(v is None for v in report.pointwise)
    assert all(v is None for v in report.integral)
    assert len(report.x) == coarse.m + 1


def test_subsample():
    r = subsample(np.arange(10.0), 4)
    np.testing.assert_array_equal(r[::4], [0.0, 4.0, 8.0])
    assert np.isnan(r[1])
    assert report_stride("aweno") == 20 and report_stride("rbm") == 40


def test_relative_error_field():
    h = np.array([1.0, 1.1, 2.0])
    err = relative_error_field(h, np.array([1.0, 1.0, 1.0]))
    assert err[0] == -16.0
    assert err[1] == pytest.approx(-1.0)
    with pytest.raises(NumericalFailure):
        relative_error_field(h, np.array([1.0, 0.0, 1.0]))
