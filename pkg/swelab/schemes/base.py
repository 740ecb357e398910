from dataclasses import dataclass
from typing import ClassVar, Optional

import numpy as np

from ..boundary import BoundaryPolicy, extend
from ..grids import Grid1D
from ..models import SchemeConfig
from ..swe_model import Representation


@dataclass
class SemiDiscreteRHS:
    """Per-cell time derivatives and the largest one-sided speed seen at the interfaces"""
    dVdt: np.ndarray
    max_speed: float

    def __len__(self) -> int:
        return self.dVdt.shape[-1]


class Scheme:
    """
    Common shape of the three base schemes.

    Subclasses set `name`, `representation` (what the evolved values are) and
    `ghost_width` (cells needed on each side of a cell to update it).
    """

    name: ClassVar[str]
    representation: ClassVar[Representation]
    ghost_width: ClassVar[int]
    semi_discrete: ClassVar[bool] = True

    def __init__(self, config: Optional[SchemeConfig] = None):
        self.config = config or SchemeConfig()

    def extend(self, U: np.ndarray, bc: BoundaryPolicy) -> np.ndarray:
        return extend(U, bc, self.ghost_width)

    def rhs_extended(self, Ue: np.ndarray, dx: float) -> SemiDiscreteRHS:
        raise NotImplementedError

    def rhs(self, U: np.ndarray, grid: Grid1D, bc: BoundaryPolicy) -> SemiDiscreteRHS:
        return self.rhs_extended(self.extend(U, bc), grid.dx)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(g={self.config.g})"
