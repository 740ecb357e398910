"""
In-process oracle checks, run by `python -m swelab selftest`.

Each check returns True/False and prints one line; the summary line reports
how many passed.
"""

import numpy as np

from .benchmarks import get_example, make_initial
from .grids import Grid1D
from .models import SchemeConfig, WenoParams
from .rates import TripleSample, quadrature_L, runge_pointwise
from .reconstruction import wenoz_minus, wenoz_weights
from .schemes import aweno_rhs, cu_rhs, rbm_step
from .swe_model import SHOCK_LEFT, SHOCK_RIGHT, SHOCK_SPEED, flux_array, simple_wave_breaking_time
from .time_march import ssprk3_step


def check_quadrature_exactness() -> bool:
    """quadrature_L integrates x^p, p <= 5, over a unit cell exactly"""
    nodes = np.arange(-2.0, 3.0)
    for p in range(6):
        exact = 0.0 if p % 2 else 2.0 * 0.5 ** (p + 1) / (p + 1)
        if abs(quadrature_L(nodes**p, 1.0) - exact) > 1e-13:
            return False
    return True


def check_wenoz_quadratics() -> bool:
    rng = np.random.default_rng(7)
    offsets = np.arange(-2.5, 3.0)
    for _ in range(20):
        a, b, c = rng.normal(size=3)
        values = a + b * offsets + c * offsets**2
        omega, _ = wenoz_weights(list(values), WenoParams())
        if abs(wenoz_minus(list(values)) - a) > 1e-12 or abs(sum(omega) - 1.0) > 1e-14:
            return False
    return True


def check_ssprk3_amplification() -> bool:
    lam, dt = -1.3, 0.2
    z = lam * dt
    w = ssprk3_step(np.array([1.0]), 0.0, dt, lambda W: lam * W)
    return abs(w[0] - (1 + z + z**2 / 2 + z**3 / 6)) < 1e-14


def check_runge_exponents() -> bool:
    x = np.linspace(0.0, 1.0, 11)
    c = 1.0 + x**2
    for p in (1, 2, 3, 5):
        sample = TripleSample(coarse=c * 0.1**p, mid=c * 0.05**p, fine=c * 0.025**p)
        if np.max(np.abs(runge_pointwise(sample) - p)) > 1e-10:
            return False
    return True


def check_rankine_hugoniot() -> bool:
    UL, UR = np.array(SHOCK_LEFT), np.array(SHOCK_RIGHT)
    residual = SHOCK_SPEED * (UL - UR) - (flux_array(UL, 10.0) - flux_array(UR, 10.0))
    return float(np.max(np.abs(residual))) < 1e-12


def check_breaking_time() -> bool:
    T = simple_wave_breaking_time()
    return abs(T - 5.0 / (3.0 * np.pi)) < 1e-15 and 0.52 < T < 0.54


def check_simple_wave_invariant() -> bool:
    grid = Grid1D(0.0, 10.0, 200)
    field = make_initial(get_example(1), grid, "point_value", 10.0)
    w1 = field.q / field.h - 2.0 * np.sqrt(10.0 * field.h)
    return float(np.max(np.abs(w1 + 10.0))) < 1e-12


def check_conservation() -> bool:
    """One periodic step of each scheme keeps sum(h) and sum(q)"""
    rng = np.random.default_rng(3)
    grid = Grid1D(0.0, 10.0, 64)
    U = np.stack([2.0 + 0.3 * rng.random(grid.m), 0.2 * rng.standard_normal(grid.m)])
    config = SchemeConfig()
    dt = 0.2 * grid.dx / 6.0
    updated = [
        ssprk3_step(U, 0.0, dt, lambda W: cu_rhs(W, grid, config.g, "periodic")),
        ssprk3_step(U, 0.0, dt, lambda W: aweno_rhs(W, grid, config.g, config.weno, "periodic")),
        rbm_step(U, grid, dt, config.g, config.rbm, "periodic").as_array(),
    ]
    before = U.sum(axis=1)
    return all(np.all(np.abs(V.sum(axis=1) - before) <= 1e-12 * np.abs(before).max()) for V in updated)


CHECKS = [
    check_quadrature_exactness,
    check_wenoz_quadratics,
    check_ssprk3_amplification,
    check_runge_exponents,
    check_rankine_hugoniot,
    check_breaking_time,
    check_simple_wave_invariant,
    check_conservation,
]


def run_selftest() -> bool:
    print("=" * 60)
    print("🧪 swelab self-test")
    print("=" * 60)
    results = []
    for check in CHECKS:
        try:
            ok = bool(check())
        except Exception as e:
            print(f"❌ {check.__name__}: {e}")
            ok = False
        else:
            print(f"{'✅' if ok else '❌'} {check.__name__}")
        results.append(ok)
    print("=" * 60)
    print(f"Results: {sum(results)}/{len(results)} checks passed")
    return all(results)
