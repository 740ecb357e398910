"""
swelab: a 1-D shallow-water laboratory for shock-capturing schemes
(central-upwind, RBM, A-WENO and their combinations) and experimental
convergence rates on imbedded grids.
"""

__version__ = "1.0.0"

from .benchmarks import EXAMPLES, ExampleSpec, get_example, make_initial
from .combined import CombinedState, RoughSet, WLRField, combined_step, detect_rough, march_combined, weak_local_residual
from .errors import CflViolation, ConfigError, LabError, NonPositiveDepth, NumericalFailure
from .grids import Grid1D, ImbeddedTriple, build_triple, coincident_index
from .models import RateReport, RBMConfig, RunConfig, SchemeConfig, StepPolicy, WenoParams
from .orchestrator import LabOrchestrator
from .swe_model import SWField, SWState

__all__ = [
    "__version__",
    "EXAMPLES",
    "ExampleSpec",
    "get_example",
    "make_initial",
    "CombinedState",
    "RoughSet",
    "WLRField",
    "combined_step",
    "detect_rough",
    "march_combined",
    "weak_local_residual",
    "LabError",
    "ConfigError",
    "NumericalFailure",
    "NonPositiveDepth",
    "CflViolation",
    "Grid1D",
    "ImbeddedTriple",
    "build_triple",
    "coincident_index",
    "RunConfig",
    "SchemeConfig",
    "StepPolicy",
    "RBMConfig",
    "WenoParams",
    "RateReport",
    "LabOrchestrator",
    "SWField",
    "SWState",
]
