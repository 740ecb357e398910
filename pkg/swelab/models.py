import math
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .config import (
    DEFAULT_C,
    DEFAULT_CFL,
    DEFAULT_G,
    DEFAULT_WENO_EPS,
    DEFAULT_WENO_P,
)

SchemeName = Literal["cu", "rbm", "aweno", "rbm-cu", "rbm-aweno"]
StepMode = Literal["adaptive", "fixed", "fixed_pow"]


class WenoParams(BaseModel):
    """Parameters of the fifth-order WENO-Z interpolant"""
    model_config = ConfigDict(frozen=True)

    p: int = Field(DEFAULT_WENO_P, gt=0, description="power in the alpha weights")
    eps: float = Field(DEFAULT_WENO_EPS, gt=0, description="regularisation of beta")
    d: Tuple[float, float, float] = Field(
        (1 / 16, 5 / 8, 5 / 16), description="linear weights d0, d1, d2"
    )

    @field_validator("d")
    @classmethod
    def _weights_sum_to_one(cls, d):
        if any(w < 0 for w in d) or abs(sum(d) - 1.0) > 1e-14:
            raise ValueError(f"linear weights must be nonnegative and sum to 1, got {d}")
        return d


class RBMConfig(BaseModel):
    """Artificial viscosity coefficient and the CFL number it is validated against"""
    model_config = ConfigDict(frozen=True)

    C: float = Field(DEFAULT_C, description="fourth-difference viscosity coefficient")
    cfl: float = Field(DEFAULT_CFL, gt=0, le=1, description="z in z^2(4 - z^2) <= C <= 3")

    @model_validator(mode="after")
    def _stability_window(self):
        z = self.cfl
        lower = z * z * (4.0 - z * z)
        if not (lower <= self.C <= 3.0):
            raise ValueError(
                f"RBM viscosity C={self.C} outside stability window [{lower:.6g}, 3] for cfl={z}"
            )
        return self


class StepPolicy(BaseModel):
    """How the marchers choose the time step"""
    model_config = ConfigDict(frozen=True)

    mode: StepMode = "adaptive"
    cfl: float = Field(DEFAULT_CFL, gt=0, le=1)
    dt: Optional[float] = Field(None, gt=0)
    kappa: Optional[float] = Field(None, gt=0)
    exponent: float = Field(5 / 3, ge=1)

    @model_validator(mode="after")
    def _mode_parameters(self):
        if self.mode == "fixed" and self.dt is None:
            raise ValueError("fixed step policy needs dt")
        if self.mode == "fixed_pow" and self.kappa is None:
            raise ValueError("fixed_pow step policy needs kappa")
        return self


class SchemeConfig(BaseModel):
    """Physics and scheme parameters shared by every scheme"""
    model_config = ConfigDict(frozen=True)

    g: float = Field(DEFAULT_G, gt=0, description="acceleration due to gravity")
    rbm: RBMConfig = Field(default_factory=RBMConfig)
    weno: WenoParams = Field(default_factory=WenoParams)
    mu: float = Field(0.2, gt=0, description="rough-set threshold factor")
    floor_at_zero: bool = Field(True, description="include 0 in the one-sided speed max/min")


class RunConfig(BaseModel):
    """One laboratory run, as read from a key=value file and CLI flags"""
    model_config = ConfigDict(extra="forbid")

    scheme: SchemeName = "cu"
    example: int = Field(1, ge=1, le=6)
    cells: int = Field(400, ge=8, description="cells of a single run, or base N of a triple")
    t_final: Optional[float] = Field(None, ge=0)
    dt_mode: Optional[StepMode] = None
    cfl: float = Field(DEFAULT_CFL, gt=0, le=1, description="CFL number of adaptive steps")
    dt: Optional[float] = Field(None, gt=0)
    kappa: Optional[float] = Field(None, gt=0)
    exponent: float = Field(5 / 3, ge=1)
    rbm_cfl: float = Field(
        DEFAULT_CFL, gt=0, le=1, description="RBM design CFL number z: bounds the planned step and sets C's window"
    )
    g: float = Field(DEFAULT_G, gt=0)
    C: float = DEFAULT_C
    mu: Optional[float] = Field(None, gt=0)
    weno_p: int = Field(DEFAULT_WENO_P, gt=0)
    weno_eps: float = Field(DEFAULT_WENO_EPS, gt=0)
    out_dir: Optional[str] = None
    reference_multiplier: Optional[int] = Field(None, ge=1)

    @field_validator("reference_multiplier")
    @classmethod
    def _power_of_two(cls, value):
        if value is not None and value & (value - 1):
            raise ValueError("reference_multiplier must be a power of 2")
        return value

    @property
    def is_combined(self) -> bool:
        return self.scheme in ("rbm-cu", "rbm-aweno")

    def scheme_config(self, default_mu: Optional[float] = None) -> SchemeConfig:
        mu = self.mu if self.mu is not None else (default_mu if default_mu is not None else 0.2)
        return SchemeConfig(
            g=self.g,
            rbm=RBMConfig(C=self.C, cfl=self.rbm_cfl),
            weno=WenoParams(p=self.weno_p, eps=self.weno_eps),
            mu=mu,
        )

    def explicit_step_policy(self) -> Optional[StepPolicy]:
        """The policy requested by the user, or None when the caller picks the default"""
        if self.dt_mode is None:
            return None
        return StepPolicy(
            mode=self.dt_mode,
            cfl=self.cfl,
            dt=self.dt,
            kappa=self.kappa,
            exponent=self.exponent,
        )


def _nan_to_none(values) -> List[Optional[float]]:
    return [None if not math.isfinite(v) else float(v) for v in np.asarray(values, dtype=float)]


class W11Row(BaseModel):
    """One line of a W^{-1,1} summary table"""
    n: int
    err_l1: Optional[float]
    rate: Optional[float] = None


class RateReport(BaseModel):
    """Experimental convergence rates at the coarse-grid endpoints x_{4j}"""
    time: float
    scheme: str
    x: List[float]
    pointwise: List[Optional[float]]
    averaged: List[Optional[float]]
    integral: List[Optional[float]]
    w11_rate: Optional[float] = None
    w11_errors: Tuple[Optional[float], Optional[float]]
    stride: int = Field(40, description="subsampling stride of the reported views")

    @classmethod
    def from_arrays(
        cls,
        time: float,
        scheme: str,
        x,
        pointwise,
        averaged,
        integral,
        w11_rate: float,
        w11_errors: Tuple[float, float],
        stride: int,
    ) -> "RateReport":
        (rate,) = _nan_to_none([w11_rate])
        return cls(
            time=time,
            scheme=scheme,
            x=[float(v) for v in x],
            pointwise=_nan_to_none(pointwise),
            averaged=_nan_to_none(averaged),
            integral=_nan_to_none(integral),
            w11_rate=rate,
            w11_errors=tuple(_nan_to_none(w11_errors)),
            stride=stride,
        )

    def column(self, name: str) -> np.ndarray:
        """A rate column as a float array with NaN for undefined entries"""
        return np.array([np.nan if v is None else v for v in getattr(self, name)], dtype=float)


class SnapshotSummary(BaseModel):
    """Files written for one output time"""
    time: float
    directory: str
    files: List[str] = Field(default_factory=list)


class RunSummary(BaseModel):
    """Result of a single-grid run"""
    example: int
    scheme: str
    cells: int
    steps: int
    dt_mode: str
    output_dir: str
    snapshots: List[SnapshotSummary] = Field(default_factory=list)


class ConvergeSummary(BaseModel):
    """Result of a three-grid convergence study"""
    example: int
    scheme: str
    N: int
    dt: Optional[float] = Field(None, description="shared fixed step, None when adaptive")
    output_dir: str
    reports: List[RateReport] = Field(default_factory=list)
    w11: Dict[str, List[W11Row]] = Field(default_factory=dict, description="keyed by output time")
    exact_reports: List[RateReport] = Field(default_factory=list)
    exact_w11: Dict[str, List[W11Row]] = Field(default_factory=dict)
    snapshots: List[SnapshotSummary] = Field(default_factory=list)
