"""
Base shock-capturing schemes.

Each scheme evolves one representation of the solution:
- CentralUpwindScheme: second-order central-upwind finite volumes on cell averages
- AwenoScheme: fifth-order A-WENO finite differences on point values
- RBMScheme: third-order three-stage RBM scheme with artificial viscosity
"""

from typing import Optional

from ..errors import ConfigError
from ..models import SchemeConfig
from .aweno_scheme import AwenoScheme, aweno_rhs
from .base import Scheme, SemiDiscreteRHS
from .cu_scheme import CentralUpwindScheme, central_upwind_flux, cu_rhs
from .rbm_scheme import RBMScheme, fourth_difference, rbm_step

SCHEMES = {
    CentralUpwindScheme.name: CentralUpwindScheme,
    AwenoScheme.name: AwenoScheme,
    RBMScheme.name: RBMScheme,
}


def get_scheme(name: str, config: Optional[SchemeConfig] = None) -> Scheme:
    """Instantiate a base scheme by name (cu, aweno or rbm)"""
    if name not in SCHEMES:
        raise ConfigError(f"Unknown base scheme: {name}")
    return SCHEMES[name](config)


__all__ = [
    "Scheme",
    "SemiDiscreteRHS",
    "CentralUpwindScheme",
    "AwenoScheme",
    "RBMScheme",
    "SCHEMES",
    "get_scheme",
    "cu_rhs",
    "aweno_rhs",
    "rbm_step",
    "central_upwind_flux",
    "fourth_difference",
]
