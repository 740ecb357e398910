"""
Benchmark problems on [0, 10].

1: simple wave (w1 = -10) that breaks into one shock per period
2: still water cosine hump splitting into two shocks per period
3: isolated shock moving right with unit speed (needs g = 10)
4-6: the same data run with the combined schemes
"""

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from .boundary import BoundaryPolicy
from .errors import ConfigError
from .grids import Grid1D
from .swe_model import (
    SHOCK_LEFT,
    SHOCK_RIGHT,
    SHOCK_X0,
    Representation,
    SWField,
    isolated_shock_antiderivative,
    isolated_shock_arrays,
    require_shock_gravity,
    simple_wave_breaking_time,
    simple_wave_exact,
)

DOMAIN = (0.0, 10.0)
GAUSS_POINTS = 4

InitialData = Callable[[np.ndarray, float], Tuple[np.ndarray, np.ndarray]]


def simple_wave_data(x: np.ndarray, g: float):
    u = 2.0 * np.sin(np.pi * x / 5.0 + np.pi / 4.0)
    h = (u + 10.0) ** 2 / (4.0 * g)
    return h, h * u


def cosine_hump_data(x: np.ndarray, g: float):
    return 2.0 * np.cos(np.pi * x / 5.0) + 3.0, np.zeros_like(x)


def isolated_shock_data(x: np.ndarray, g: float):
    return isolated_shock_arrays(x, 0.0, g)


@dataclass(frozen=True)
class ExampleSpec:
    """One benchmark: initial data, boundary policy, default times and detector threshold"""
    id: int
    name: str
    initial: InitialData
    bc: BoundaryPolicy
    snapshot_times: Tuple[float, ...]
    mu: Optional[float] = None
    domain: Tuple[float, float] = DOMAIN

    @property
    def base_id(self) -> int:
        """The single-scheme example carrying the same data"""
        return self.id - 3 if self.id > 3 else self.id

    @property
    def is_combined(self) -> bool:
        return self.id > 3

    @property
    def has_exact(self) -> bool:
        return self.base_id == 3

    def grid(self, cells: int) -> Grid1D:
        return Grid1D(self.domain[0], self.domain[1], cells)

    def exact(self, x: np.ndarray, t: float, g: float) -> Optional[Tuple[np.ndarray, np.ndarray]]:
        """Exact (h, q) where one is known: always for the isolated shock, before breaking for the simple wave"""
        if self.base_id == 3:
            return isolated_shock_arrays(x, t, g)
        if self.base_id == 1 and t < simple_wave_breaking_time():
            return simple_wave_exact(x, t, g)
        return None

    def exact_antiderivative(self, x: np.ndarray, t: float, component: int = 0) -> np.ndarray:
        if self.base_id != 3:
            raise ConfigError(f"Example {self.id} has no closed-form anti-derivative")
        return isolated_shock_antiderivative(x, t, component, a=self.domain[0])


EXAMPLES: Dict[int, ExampleSpec] = {
    1: ExampleSpec(1, "simple wave", simple_wave_data, "periodic", (0.5, 1.0, 2.5)),
    2: ExampleSpec(2, "cosine hump", cosine_hump_data, "periodic", (0.5, 1.0, 2.5)),
    3: ExampleSpec(3, "isolated shock", isolated_shock_data, "free", (1.0,)),
    4: ExampleSpec(4, "simple wave, combined", simple_wave_data, "periodic", (0.5, 1.0, 2.5), mu=0.2),
    5: ExampleSpec(5, "cosine hump, combined", cosine_hump_data, "periodic", (0.5, 1.0, 2.5), mu=0.1),
    6: ExampleSpec(6, "isolated shock, combined", isolated_shock_data, "free", (1.0,), mu=0.2),
}


def get_example(example_id: int) -> ExampleSpec:
    if example_id not in EXAMPLES:
        raise ConfigError(f"Unknown example: {example_id} (expected 1..6)")
    return EXAMPLES[example_id]


def _gauss_average(f: InitialData, grid: Grid1D, g: float) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(GAUSS_POINTS)
    x = grid.centers[:, None] + 0.5 * grid.dx * nodes[None, :]
    h, q = f(x, g)
    return 0.5 * (h @ weights), 0.5 * (q @ weights)


def _cosine_hump_averages(grid: Grid1D) -> Tuple[np.ndarray, np.ndarray]:
    xl, xr = grid.interfaces[:-1], grid.interfaces[1:]
    h = 3.0 + 2.0 * (5.0 / np.pi) * (np.sin(np.pi * xr / 5.0) - np.sin(np.pi * xl / 5.0)) / grid.dx
    return h, np.zeros(grid.m)


def _isolated_shock_averages(grid: Grid1D, g: float) -> Tuple[np.ndarray, np.ndarray]:
    require_shock_gravity(g)
    xl = grid.interfaces[:-1]
    left_share = np.clip((SHOCK_X0 - xl) / grid.dx, 0.0, 1.0)
    h = left_share * SHOCK_LEFT[0] + (1.0 - left_share) * SHOCK_RIGHT[0]
    q = left_share * SHOCK_LEFT[1] + (1.0 - left_share) * SHOCK_RIGHT[1]
    return h, q


def make_initial(
    example: ExampleSpec, grid: Grid1D, representation: Representation, g: float = 10.0
) -> SWField:
    """
    Initial field of `example` on `grid`.

    Point values are sampled at the cell centres. Cell averages use 4-point
    Gauss-Legendre quadrature, except for the cosine hump and the isolated
    shock, whose averages are integrated exactly.
    """
    if representation == "point_value":
        h, q = example.initial(grid.centers, g)
    elif representation != "cell_average":
        raise ConfigError(f"Unknown representation: {representation}")
    elif example.base_id == 2:
        h, q = _cosine_hump_averages(grid)
    elif example.base_id == 3:
        h, q = _isolated_shock_averages(grid, g)
    else:
        h, q = _gauss_average(example.initial, grid, g)
    return SWField(h=np.asarray(h, dtype=float), q=np.asarray(q, dtype=float), kind=representation)
