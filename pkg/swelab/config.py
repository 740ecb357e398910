import os
from pathlib import Path
from typing import Dict, Optional

from dotenv import load_dotenv, dotenv_values

from .errors import ConfigError

load_dotenv()

# ============================================
# OUTPUT / LOGGING CONFIGURATION
# ============================================
# Override in the .env file or the environment:
# SWELAB_OUTPUT_ROOT=/path/to/results
# SWELAB_LOG_LEVEL=DEBUG
# ============================================

OUTPUT_ROOT = os.getenv("SWELAB_OUTPUT_ROOT", "results")
LOG_LEVEL = os.getenv("SWELAB_LOG_LEVEL", "INFO").upper()

# Physics and scheme defaults
DEFAULT_G = 10.0
DEFAULT_C = 2.8
DEFAULT_CFL = 0.5
DEFAULT_WENO_P = 2
DEFAULT_WENO_EPS = 1e-12

# Convergence-study settings
CONVERGENCE_NU = 0.25
AVERAGE_HALFWIDTH = 12
ERROR_FLOOR = -16.0
DEFAULT_REFERENCE_MULTIPLIER = 8


def read_config_file(path: Optional[str]) -> Dict[str, str]:
    """
    Read a flat key=value run file.

    Blank values are dropped so that they do not shadow model defaults.
    Unknown keys are rejected by the caller's RunConfig validation.
    """
    if not path:
        return {}
    if not Path(path).is_file():
        raise ConfigError(f"Config file not found: {path}")
    return {k: v for k, v in dotenv_values(path).items() if v not in (None, "")}


def resolve_output_root(out_dir: Optional[str]) -> Path:
    """Explicit out_dir wins, otherwise SWELAB_OUTPUT_ROOT"""
    return Path(out_dir) if out_dir else Path(os.getenv("SWELAB_OUTPUT_ROOT", OUTPUT_ROOT))
