"""
Saint-Venant physics on a flat bottom.

U = (h, q), F(U) = (q, q^2/h + g h^2 / 2). The array helpers take states with
the components on axis 0 and any number of trailing axes; the scalar
functions below wrap them for single states.
"""

from dataclasses import dataclass
from typing import Iterable, Literal, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import ConfigError, NonPositiveDepth

DEPTH_FLOOR = 1e-12

Representation = Literal["cell_average", "point_value"]


@dataclass(frozen=True)
class SWState:
    """Water depth h and discharge q = h*u"""
    h: float
    q: float

    def __post_init__(self):
        if not self.h > DEPTH_FLOOR:
            raise NonPositiveDepth(f"non-positive depth h={self.h}")

    @property
    def u(self) -> float:
        return self.q / self.h

    def as_array(self) -> np.ndarray:
        return np.array([self.h, self.q], dtype=float)


@dataclass(frozen=True)
class SWField:
    """Depth and discharge sequences on a grid, tagged by what they represent"""
    h: np.ndarray
    q: np.ndarray
    kind: Representation = "point_value"

    @classmethod
    def from_array(cls, U: np.ndarray, kind: Representation = "point_value") -> "SWField":
        U = np.asarray(U, dtype=float)
        return cls(h=U[0].copy(), q=U[1].copy(), kind=kind)

    def as_array(self) -> np.ndarray:
        return np.stack([np.asarray(self.h, dtype=float), np.asarray(self.q, dtype=float)])

    def states(self) -> list:
        return [SWState(float(h), float(q)) for h, q in zip(self.h, self.q)]

    def __len__(self) -> int:
        return len(self.h)


FieldLike = Union[SWField, np.ndarray, Sequence[SWState]]


def as_array(field: FieldLike) -> np.ndarray:
    """Return the (2, m) float array behind any field representation"""
    if isinstance(field, SWField):
        return field.as_array()
    if isinstance(field, np.ndarray):
        return np.asarray(field, dtype=float)
    states = list(field)
    if states and isinstance(states[0], SWState):
        return np.array([[s.h for s in states], [s.q for s in states]], dtype=float)
    return np.asarray(states, dtype=float)


def check_depth(U: np.ndarray, stage: Optional[str] = None) -> None:
    """Raise NonPositiveDepth at the first depth at or below the floor (NaN included)"""
    h = np.asarray(U)[0]
    bad = ~(h > DEPTH_FLOOR)
    if np.any(bad):
        where = np.argwhere(bad)[0]
        index = int(where[-1]) if where.size else None
        raise NonPositiveDepth(
            f"non-positive depth h={float(h[tuple(where)]) if where.size else float(h):.6g}",
            index=index,
            stage=stage,
        )


# ----------------------------------------------------------------------
# Array helpers
# ----------------------------------------------------------------------

def flux_array(U: np.ndarray, g: float) -> np.ndarray:
    h, q = U[0], U[1]
    return np.stack([q, q * q / h + 0.5 * g * h * h])


def eigen_arrays(U: np.ndarray, g: float) -> Tuple[np.ndarray, np.ndarray]:
    h, q = U[0], U[1]
    u = q / h
    c = np.sqrt(g * h)
    return u - c, u + c


def max_wave_speed(U: np.ndarray, g: float) -> float:
    """max_j max(lambda_2, -lambda_1) over all states"""
    lam1, lam2 = eigen_arrays(U, g)
    return float(max(np.max(lam2), np.max(-lam1)))


def speed_arrays(
    Vm: np.ndarray, Vp: np.ndarray, g: float, floor_at_zero: bool = True
) -> Tuple[np.ndarray, np.ndarray]:
    """One-sided local speeds (a_plus, a_minus) from the two interface values"""
    lm1, lm2 = eigen_arrays(Vm, g)
    lp1, lp2 = eigen_arrays(Vp, g)
    a_plus = np.maximum(lp2, lm2)
    a_minus = np.minimum(lp1, lm1)
    if floor_at_zero:
        a_plus = np.maximum(a_plus, 0.0)
        a_minus = np.minimum(a_minus, 0.0)
    return a_plus, a_minus


def roe_averages(
    left: np.ndarray, right: np.ndarray, g: float
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(h_hat, u_hat, c_hat): arithmetic depth, sqrt(h)-weighted velocity"""
    hl, hr = left[0], right[0]
    sl, sr = np.sqrt(hl), np.sqrt(hr)
    h_hat = 0.5 * (hl + hr)
    u_hat = (sl * (left[1] / hl) + sr * (right[1] / hr)) / (sl + sr)
    c_hat = np.sqrt(g * h_hat)
    return h_hat, u_hat, c_hat


def to_characteristic(V: np.ndarray, u_hat, c_hat) -> np.ndarray:
    """Gamma = R^{-1} V with R^{-1} = 1/(2c) [[c + u, -1], [c - u, 1]]"""
    h, q = V[0], V[1]
    inv = 0.5 / c_hat
    return np.stack([((c_hat + u_hat) * h - q) * inv, ((c_hat - u_hat) * h + q) * inv])


def from_characteristic(G: np.ndarray, u_hat, c_hat) -> np.ndarray:
    """V = R Gamma with R = [[1, 1], [u - c, u + c]]"""
    return np.stack([G[0] + G[1], (u_hat - c_hat) * G[0] + (u_hat + c_hat) * G[1]])


# ----------------------------------------------------------------------
# Single-state operations
# ----------------------------------------------------------------------

def flux(U: SWState, g: float) -> Tuple[float, float]:
    F = flux_array(U.as_array(), g)
    return float(F[0]), float(F[1])


def eigenvalues(U: SWState, g: float) -> Tuple[float, float]:
    lam1, lam2 = eigen_arrays(U.as_array(), g)
    return float(lam1), float(lam2)


@dataclass(frozen=True)
class CharBasis:
    """Roe-averaged right eigenvectors R and their inverse"""
    R: np.ndarray
    Rinv: np.ndarray
    u_hat: float
    c_hat: float
    h_hat: float


def roe_basis(left: SWState, right: SWState, g: float) -> CharBasis:
    if not g > 0:
        raise ConfigError(f"characteristic basis needs g > 0, got g={g}")
    h_hat, u_hat, c_hat = (float(v) for v in roe_averages(left.as_array(), right.as_array(), g))
    R = np.array([[1.0, 1.0], [u_hat - c_hat, u_hat + c_hat]])
    # Built from the same (u_hat, c_hat) as R.
    Rinv = (0.5 / c_hat) * np.array([[c_hat + u_hat, -1.0], [c_hat - u_hat, 1.0]])
    return CharBasis(R=R, Rinv=Rinv, u_hat=u_hat, c_hat=c_hat, h_hat=h_hat)


def jacobian(U: SWState, g: float) -> np.ndarray:
    """Analytic flux Jacobian A = dF/dU"""
    u = U.u
    return np.array([[0.0, 1.0], [g * U.h - u * u, 2.0 * u]])


@dataclass(frozen=True)
class SpeedPair:
    a_plus: float
    a_minus: float


def local_speeds(minus: SWState, plus: SWState, g: float, floor_at_zero: bool = True) -> SpeedPair:
    a_plus, a_minus = speed_arrays(minus.as_array(), plus.as_array(), g, floor_at_zero)
    return SpeedPair(a_plus=float(a_plus), a_minus=float(a_minus))


# ----------------------------------------------------------------------
# Exact solutions
# ----------------------------------------------------------------------

SHOCK_LEFT = (1.0, 0.0)
SHOCK_RIGHT = ((-5.0 + 3.0 * np.sqrt(5.0)) / 10.0, (3.0 * np.sqrt(5.0) - 15.0) / 10.0)
SHOCK_X0 = 5.0
SHOCK_SPEED = 1.0
SHOCK_G = 10.0


def require_shock_gravity(g: float) -> None:
    # The two states satisfy Rankine-Hugoniot with speed 1 only for g = 10.
    if g != SHOCK_G:
        raise ConfigError(f"isolated-shock states are a shock only for g=10, got g={g}")


def isolated_shock_arrays(x, t: float, g: float = SHOCK_G) -> Tuple[np.ndarray, np.ndarray]:
    require_shock_gravity(g)
    x = np.asarray(x, dtype=float)
    left = (x - SHOCK_SPEED * t) < SHOCK_X0
    h = np.where(left, SHOCK_LEFT[0], SHOCK_RIGHT[0])
    q = np.where(left, SHOCK_LEFT[1], SHOCK_RIGHT[1])
    return h, q


def isolated_shock_exact(x: float, t: float, g: float = SHOCK_G) -> SWState:
    h, q = isolated_shock_arrays(x, t, g)
    return SWState(float(h), float(q))


def isolated_shock_antiderivative(x, t: float, component: int = 0, a: float = 0.0) -> np.ndarray:
    """Exact integral of the isolated-shock solution from a to x (a left of the shock)"""
    x = np.asarray(x, dtype=float)
    s = SHOCK_X0 + SHOCK_SPEED * t
    left, right = SHOCK_LEFT[component], SHOCK_RIGHT[component]
    return np.where(x <= s, left * (x - a), left * (s - a) + right * (x - s))


SIMPLE_WAVE_AMPLITUDE = 2.0
SIMPLE_WAVE_PERIOD = 10.0


def _simple_wave_velocity(xi, amplitude: float):
    k = 2.0 * np.pi / SIMPLE_WAVE_PERIOD
    return amplitude * np.sin(k * xi + np.pi / 4), amplitude * k * np.cos(k * xi + np.pi / 4)


def simple_wave_breaking_time(amplitude: float = SIMPLE_WAVE_AMPLITUDE) -> float:
    """T = -1 / min d(u + c)/dx at t = 0, with u + c = 3u/2 + 5 on the w1 = -10 wave"""
    k = 2.0 * np.pi / SIMPLE_WAVE_PERIOD
    return 1.0 / (1.5 * amplitude * k)


def simple_wave_exact(
    x, t: float, g: float = SHOCK_G, amplitude: float = SIMPLE_WAVE_AMPLITUDE
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Smooth solution of the one-shock benchmark before it breaks.

    w1 = u - 2c = -10 everywhere, so u is carried unchanged along the
    straight characteristics x = xi + t (3 u0(xi) / 2 + 5). The foot xi is
    found by fixed-point sweeps (a contraction for t < T) polished by Newton.
    """
    T = simple_wave_breaking_time(amplitude)
    if not 0 <= t < T:
        raise ConfigError(f"simple-wave solution exists only for 0 <= t < {T:.6g}, got t={t}")
    x = np.asarray(x, dtype=float)
    xi = x - 5.0 * t
    for _ in range(30):
        u0, _ = _simple_wave_velocity(xi, amplitude)
        xi = x - t * (1.5 * u0 + 5.0)
    for _ in range(8):
        u0, du0 = _simple_wave_velocity(xi, amplitude)
        residual = xi + t * (1.5 * u0 + 5.0) - x
        xi = xi - residual / (1.0 + 1.5 * t * du0)
    u, _ = _simple_wave_velocity(xi, amplitude)
    h = (u + 10.0) ** 2 / (4.0 * g)
    return h, h * u


def riemann_invariants(U: np.ndarray, g: float) -> Tuple[np.ndarray, np.ndarray]:
    """(w1, w2) = (u - 2c, u + 2c)"""
    h, q = U[0], U[1]
    u = q / h
    c = np.sqrt(g * h)
    return u - 2.0 * c, u + 2.0 * c


def states_to_array(states: Iterable[SWState]) -> np.ndarray:
    return as_array(list(states))
