"""
Uniform 1-D meshes and the triple of imbedded refinements used by the
convergence study.

The coarse, mid and fine grids have N, 2N and 4N cells on the same [a, b], so
every coarse interface x_{4j} (fine-grid numbering) is an interface of all
three levels.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, Literal

import numpy as np

from .errors import ConfigError

Level = Literal["coarse", "mid", "fine"]
LEVEL_FACTORS: Dict[str, int] = {"coarse": 1, "mid": 2, "fine": 4}


@dataclass(frozen=True)
class Grid1D:
    """Uniform mesh of m cells on [a, b]"""
    a: float
    b: float
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ConfigError(f"Grid needs at least one cell, got m={self.m}")
        if not self.b > self.a:
            raise ConfigError(f"Degenerate domain [{self.a}, {self.b}]")

    @property
    def dx(self) -> float:
        return (self.b - self.a) / self.m

    def interface(self, k):
        """Position of interface k (left edge of cell k); a + k*dx, never accumulated"""
        return self.a + np.asarray(k) * self.dx

    def center(self, k):
        return self.a + (np.asarray(k) + 0.5) * self.dx

    @property
    def interfaces(self) -> np.ndarray:
        return self.interface(np.arange(self.m + 1))

    @property
    def centers(self) -> np.ndarray:
        return self.center(np.arange(self.m))

    def refined(self, factor: int) -> "Grid1D":
        return Grid1D(self.a, self.b, self.m * factor)


@dataclass(frozen=True)
class ImbeddedTriple:
    """Grids with N, 2N and 4N cells sharing the endpoints a, b"""
    coarse: Grid1D
    mid: Grid1D
    fine: Grid1D

    @property
    def N(self) -> int:
        return self.coarse.m

    def level(self, name: Level) -> Grid1D:
        if name not in LEVEL_FACTORS:
            raise ConfigError(f"Unknown grid level: {name}")
        return getattr(self, name)

    def __iter__(self) -> Iterator[Grid1D]:
        return iter((self.coarse, self.mid, self.fine))


def build_triple(a: float, b: float, N: int) -> ImbeddedTriple:
    """Build the coarse/mid/fine imbedded grids on [a, b] with N coarse cells"""
    if N < 2:
        raise ConfigError(f"Imbedded triple needs N >= 2, got N={N}")
    if not b > a:
        raise ConfigError(f"Degenerate domain [{a}, {b}]")
    return ImbeddedTriple(
        coarse=Grid1D(a, b, N),
        mid=Grid1D(a, b, 2 * N),
        fine=Grid1D(a, b, 4 * N),
    )


def coincident_index(triple: ImbeddedTriple, j: int, level: Level) -> int:
    """Interface index of the coarse endpoint j on the requested level"""
    if not 0 <= j <= triple.N:
        raise ConfigError(f"Coarse endpoint index {j} outside 0..{triple.N}")
    if level not in LEVEL_FACTORS:
        raise ConfigError(f"Unknown grid level: {level}")
    return LEVEL_FACTORS[level] * j


def coincident_indices(N: int, factor: int) -> np.ndarray:
    """All coincident interface indices 0, factor, ..., factor*N"""
    return factor * np.arange(N + 1)
