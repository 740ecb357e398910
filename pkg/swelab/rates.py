"""
Experimental convergence rates on three imbedded grids.

All rates are sampled at the coarse interfaces x_j, j = 0..N, which are also
interfaces of the mid (index 2j) and fine (index 4j) grids. Undefined rates
(vanishing denominators, e.g. in constant regions) are stored as NaN.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Literal, Optional, Sequence, Tuple

import numpy as np

from .boundary import BoundaryPolicy, extend
from .config import AVERAGE_HALFWIDTH, ERROR_FLOOR
from .errors import ConfigError, NumericalFailure
from .grids import Grid1D, ImbeddedTriple
from .models import RateReport, W11Row, WenoParams
from .reconstruction import characteristic_interface_arrays, minmod_interface_arrays
from .swe_model import FieldLike, as_array

logger = logging.getLogger(__name__)

RUNGE_TOL = 1e-13
QUADRATURE_WEIGHTS = np.array([-17.0, 308.0, 5178.0, 308.0, -17.0]) / 5760.0

SampleKind = Literal["point_runge", "antiderivative"]
AverageMode = Literal["periodic", "clamped"]


def uses_minmod(scheme: str) -> bool:
    """CU results are cell averages; every other scheme produces point values"""
    return scheme == "cu"


def report_stride(scheme: str) -> int:
    return 20 if scheme in ("aweno", "rbm-aweno") else 40


# ----------------------------------------------------------------------
# Interface point values
# ----------------------------------------------------------------------

def interface_point_values(
    field: FieldLike,
    grid: Grid1D,
    scheme: str,
    g: float,
    params: Optional[WenoParams] = None,
    bc: BoundaryPolicy = "periodic",
    component: int = 0,
) -> np.ndarray:
    """
    Averages of the two one-sided values at every interface 0..m.

    CU fields use the minmod reconstruction; RBM, A-WENO and combined fields
    are post-processed with characteristic WENO-Z.
    """
    U = as_array(field)
    if uses_minmod(scheme):
        Vm, Vp = minmod_interface_arrays(extend(U, bc, 2), grid.dx)
    else:
        Vm, Vp = characteristic_interface_arrays(extend(U, bc, 3), g, params)
    return 0.5 * (Vm[component] + Vp[component])


def interface_point_value(
    field: FieldLike,
    grid: Grid1D,
    j: int,
    scheme: str,
    g: float,
    params: Optional[WenoParams] = None,
    bc: BoundaryPolicy = "periodic",
    component: int = 0,
) -> float:
    if not 0 <= j <= grid.m:
        raise ConfigError(f"interface index {j} outside 0..{grid.m}")
    return float(interface_point_values(field, grid, scheme, g, params, bc, component)[j])


# ----------------------------------------------------------------------
# Runge rates
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class TripleSample:
    """Values of the three levels at the coincident coarse interfaces"""
    coarse: np.ndarray
    mid: np.ndarray
    fine: np.ndarray
    kind: SampleKind = "point_runge"

    def __post_init__(self):
        if not len(self.coarse) == len(self.mid) == len(self.fine):
            raise ConfigError(
                f"triple sample lengths differ: {len(self.coarse)}, {len(self.mid)}, {len(self.fine)}"
            )

    @classmethod
    def from_levels(cls, coarse, mid, fine, kind: SampleKind = "point_runge") -> "TripleSample":
        """Pick x_j out of full interface sequences of lengths N+1, 2N+1, 4N+1"""
        coarse, mid, fine = (np.asarray(v, dtype=float) for v in (coarse, mid, fine))
        N = len(coarse) - 1
        if len(mid) != 2 * N + 1 or len(fine) != 4 * N + 1:
            raise ConfigError(f"level sequences are not imbedded: {len(coarse)}, {len(mid)}, {len(fine)}")
        return cls(coarse=coarse, mid=mid[::2], fine=fine[::4], kind=kind)


def runge_ratio_rate(num: np.ndarray, den: np.ndarray, tol: float = RUNGE_TOL) -> np.ndarray:
    """log_{1/2}|num/den|, NaN where |den| < tol*max(1, |num|) or the ratio vanishes"""
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    undefined = np.abs(den) < tol * np.maximum(1.0, np.abs(num))
    with np.errstate(divide="ignore", invalid="ignore"):
        r = -np.log2(np.abs(num / np.where(undefined, 1.0, den)))
    r[undefined | ~np.isfinite(r)] = np.nan
    return r


def runge_pointwise(sample: TripleSample, tol: float = RUNGE_TOL) -> np.ndarray:
    """r_j = log_{1/2}|(V^{2N} - V^{4N}) / (V^N - V^{2N})|"""
    return runge_ratio_rate(sample.mid - sample.fine, sample.coarse - sample.mid, tol)


def averaged_rate(
    r: Sequence[float], window_halfwidth: int = AVERAGE_HALFWIDTH, bc: AverageMode = "periodic"
) -> np.ndarray:
    """
    Mean of the defined rates in a (2*halfwidth + 1)-point window around each point.

    periodic: r has N+1 entries with r[N] the image of r[0]; windows wrap
    modulo N. clamped: windows are cut at 0 and N.
    """
    r = np.asarray(r, dtype=float)
    N = len(r) - 1
    if N < 1:
        raise ConfigError("need at least two rates to average")
    offsets = np.arange(-window_halfwidth, window_halfwidth + 1)
    if bc == "periodic":
        idx = np.mod(np.arange(N)[:, None] + offsets[None, :], N)
        windows = r[:N][idx]
        out = _nanmean_rows(windows)
        return np.append(out, out[0])
    if bc != "clamped":
        raise ConfigError(f"Unknown averaging mode: {bc}")
    idx = np.arange(N + 1)[:, None] + offsets[None, :]
    valid = (idx >= 0) & (idx <= N)
    windows = np.where(valid, r[np.clip(idx, 0, N)], np.nan)
    return _nanmean_rows(windows)


def _nanmean_rows(windows: np.ndarray) -> np.ndarray:
    counts = np.sum(np.isfinite(windows), axis=1)
    totals = np.nansum(windows, axis=1)
    out = np.full(len(windows), np.nan)
    np.divide(totals, counts, out=out, where=counts > 0)
    return out


# ----------------------------------------------------------------------
# Integral rates
# ----------------------------------------------------------------------

def quadrature_L(values: Sequence, dx: float):
    """Sixth-order cell integral from five point values centred on the cell"""
    values = [np.asarray(v, dtype=float) for v in values]
    if len(values) != 5:
        raise ConfigError(f"quadrature needs five values, got {len(values)}")
    return dx * sum(w * v for w, v in zip(QUADRATURE_WEIGHTS, values))


def cell_integrals(
    field: FieldLike, grid: Grid1D, scheme: str, bc: BoundaryPolicy = "periodic", component: int = 0
) -> np.ndarray:
    """Integral of the solution over every cell of `grid`"""
    values = as_array(field)[component]
    if uses_minmod(scheme):
        return grid.dx * values
    ve = extend(values, bc, 2)
    return quadrature_L([ve[k : k + grid.m] for k in range(5)], grid.dx)


def antiderivative_sequence(
    field: FieldLike,
    grid: Grid1D,
    N: int,
    scheme: str,
    bc: BoundaryPolicy = "periodic",
    component: int = 0,
) -> np.ndarray:
    """
    I_0 = 0, I_j = I_{j-1} + integral over the coarse cell [x_{j-1}, x_j].

    `grid` has m = s*N cells; each coarse cell integral is the sum of the s
    level-cell integrals it contains.
    """
    if N < 1 or grid.m % N:
        raise ConfigError(f"grid of {grid.m} cells is not a refinement of {N} coarse cells")
    J = cell_integrals(field, grid, scheme, bc, component).reshape(N, grid.m // N).sum(axis=1)
    return np.concatenate([[0.0], np.cumsum(J)])


def integral_rates(
    I_coarse: np.ndarray, I_mid: np.ndarray, I_fine: np.ndarray, tol: float = RUNGE_TOL
) -> np.ndarray:
    """Runge rates of the anti-derivative sequences"""
    sample = TripleSample(
        coarse=np.asarray(I_coarse), mid=np.asarray(I_mid), fine=np.asarray(I_fine), kind="antiderivative"
    )
    return runge_pointwise(sample, tol)


def l1_norm(psi: np.ndarray, dx_coarse: float) -> float:
    """dx_coarse * (|psi_1| + ... + |psi_N|); index 0 is left out"""
    return float(dx_coarse * np.sum(np.abs(np.asarray(psi)[1:])))


def w11_rate(
    I_coarse: np.ndarray, I_mid: np.ndarray, I_fine: np.ndarray, dx_coarse: float
) -> Tuple[float, Tuple[float, float]]:
    """
    W^{-1,1} rate log_{1/2}(||I^{2N} - I^{4N}|| / ||I^N - I^{2N}||).

    Returns (rate, (||I^N - I^{2N}||, ||I^{2N} - I^{4N}||)); the rate is NaN
    when either norm vanishes.
    """
    e1 = l1_norm(np.asarray(I_coarse) - np.asarray(I_mid), dx_coarse)
    e2 = l1_norm(np.asarray(I_mid) - np.asarray(I_fine), dx_coarse)
    rate = -np.log2(e2 / e1) if e1 > 0 and e2 > 0 else np.nan
    return float(rate), (e1, e2)


# ----------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------

def triple_rate_report(
    fields: Sequence[FieldLike],
    triple: ImbeddedTriple,
    scheme: str,
    g: float,
    time: float,
    params: Optional[WenoParams] = None,
    bc: BoundaryPolicy = "periodic",
    component: int = 0,
) -> RateReport:
    """All rate families of one snapshot of a coarse/mid/fine run"""
    point = [
        interface_point_values(U, grid, scheme, g, params, bc, component) for U, grid in zip(fields, triple)
    ]
    sample = TripleSample.from_levels(*point)
    r = runge_pointwise(sample)
    r_ave = averaged_rate(r, bc="periodic" if bc == "periodic" else "clamped")

    I = [antiderivative_sequence(U, grid, triple.N, scheme, bc, component) for U, grid in zip(fields, triple)]
    r_int = integral_rates(*I)
    rate, errors = w11_rate(*I, triple.coarse.dx)
    logger.info("t=%g %s N=%d: W11 rate %.4g (errors %.3e, %.3e)", time, scheme, triple.N, rate, *errors)

    return RateReport.from_arrays(
        time=time,
        scheme=scheme,
        x=triple.coarse.interfaces,
        pointwise=r,
        averaged=r_ave,
        integral=r_int,
        w11_rate=rate,
        w11_errors=errors,
        stride=report_stride(scheme),
    )


ExactField = Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]]
ExactAntiderivative = Callable[[np.ndarray], np.ndarray]


def exact_w11_error(
    field: FieldLike,
    grid: Grid1D,
    scheme: str,
    exact_antiderivative: ExactAntiderivative,
    bc: BoundaryPolicy = "free",
    component: int = 0,
) -> float:
    """||I^m - I^Exact|| on the grid's own interfaces"""
    I = antiderivative_sequence(field, grid, grid.m, scheme, bc, component)
    return l1_norm(I - exact_antiderivative(grid.interfaces), grid.dx)


def exact_w11_table(
    fields: Sequence[FieldLike],
    grids: Sequence[Grid1D],
    scheme: str,
    exact_antiderivative: ExactAntiderivative,
    bc: BoundaryPolicy = "free",
    component: int = 0,
) -> list:
    """One W11Row per grid, each rate taken against the previous row"""
    rows = []
    previous = None
    for U, grid in zip(fields, grids):
        err = exact_w11_error(U, grid, scheme, exact_antiderivative, bc, component)
        rate = None
        if previous is not None and previous > 0 and err > 0:
            rate = float(-np.log2(err / previous))
        rows.append(W11Row(n=grid.m, err_l1=err, rate=rate))
        previous = err
    return rows


def rates_vs_exact(
    coarse_field: FieldLike,
    fine_field: FieldLike,
    coarse_grid: Grid1D,
    scheme: str,
    exact: ExactField,
    exact_antiderivative: ExactAntiderivative,
    g: float,
    time: float,
    params: Optional[WenoParams] = None,
    bc: BoundaryPolicy = "free",
    component: int = 0,
    tol: float = RUNGE_TOL,
) -> RateReport:
    """
    Rates of N- and 2N-cell solutions measured against an exact solution.

    r_j = log_{1/2}|(V^{2N}_{2j} - V^E(x_j)) / (V^N_j - V^E(x_j))|, and the
    same for the anti-derivatives; the W^{-1,1} pair uses the coarse norm.
    """
    N = coarse_grid.m
    fine_grid = coarse_grid.refined(2)
    x = coarse_grid.interfaces
    exact_values = exact(x)[component]

    vc = interface_point_values(coarse_field, coarse_grid, scheme, g, params, bc, component)
    vf = interface_point_values(fine_field, fine_grid, scheme, g, params, bc, component)[::2]
    r = runge_ratio_rate(vf - exact_values, vc - exact_values, tol)

    I_exact = exact_antiderivative(x)
    Ic = antiderivative_sequence(coarse_field, coarse_grid, N, scheme, bc, component)
    If = antiderivative_sequence(fine_field, fine_grid, N, scheme, bc, component)
    r_int = runge_ratio_rate(If - I_exact, Ic - I_exact, tol)

    e1 = l1_norm(Ic - I_exact, coarse_grid.dx)
    e2 = l1_norm(If - I_exact, coarse_grid.dx)
    rate = float(-np.log2(e2 / e1)) if e1 > 0 and e2 > 0 else np.nan
    logger.info("t=%g %s N=%d vs exact: W11 rate %.4g (errors %.3e, %.3e)", time, scheme, N, rate, e1, e2)

    return RateReport.from_arrays(
        time=time,
        scheme=scheme,
        x=x,
        pointwise=r,
        averaged=averaged_rate(r, bc="clamped"),
        integral=r_int,
        w11_rate=rate,
        w11_errors=(e1, e2),
        stride=report_stride(scheme),
    )


def subsample(r: Sequence[float], stride: int) -> np.ndarray:
    """Every stride-th coarse point, NaN elsewhere, aligned with the dense column"""
    r = np.asarray(r, dtype=float)
    out = np.full_like(r, np.nan)
    out[::stride] = r[::stride]
    return out


def relative_error_field(h: np.ndarray, h_ref: np.ndarray, floor: float = ERROR_FLOOR) -> np.ndarray:
    """log10|(h - h_ref)/h_ref|, clamped from below at `floor`"""
    h = np.asarray(h, dtype=float)
    h_ref = np.asarray(h_ref, dtype=float)
    if np.any(h_ref == 0):
        raise NumericalFailure(
            "reference depth vanishes", index=int(np.flatnonzero(h_ref == 0)[0]), stage="error field"
        )
    with np.errstate(divide="ignore"):
        err = np.log10(np.abs((h - h_ref) / h_ref))
    return np.maximum(err, floor)
