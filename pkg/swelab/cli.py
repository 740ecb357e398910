"""
Command-line front end.

    python -m swelab run --example 1 --scheme cu --cells 400
    python -m swelab converge --example 1 --scheme rbm --cells 250 --t-final 0.5
    python -m swelab combined-run --example 4 --internal aweno
    python -m swelab selftest
    python -m swelab serve --port 8000

Flags override values read from --config (a flat key=value file).
Exit codes: 0 success, 1 configuration error, 2 numerical failure.
"""

import argparse
import asyncio
import logging
import sys
from typing import Dict, List, Optional

from pydantic import ValidationError

from .config import LOG_LEVEL, read_config_file
from .errors import ConfigError, NumericalFailure
from .models import RunConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2

# flag dest -> RunConfig field
RUN_FLAGS = (
    "scheme", "example", "cells", "t_final", "dt_mode", "cfl", "dt", "kappa",
    "exponent", "rbm_cfl", "g", "C", "mu", "weno_p", "weno_eps", "out_dir",
)


def _add_run_options(parser: argparse.ArgumentParser, with_scheme: bool = True) -> None:
    parser.add_argument("--config", help="flat key=value run file")
    if with_scheme:
        parser.add_argument("--scheme", choices=["cu", "rbm", "aweno", "rbm-cu", "rbm-aweno"])
    parser.add_argument("--example", type=int, help="benchmark id 1..6")
    parser.add_argument("--cells", type=int, help="cells of a run, or N of a convergence triple")
    parser.add_argument("--t-final", dest="t_final", type=float, help="single output time")
    parser.add_argument("--dt-mode", dest="dt_mode", choices=["adaptive", "fixed", "fixed_pow"])
    parser.add_argument("--cfl", type=float, help="CFL number of adaptive steps")
    parser.add_argument("--rbm-cfl", dest="rbm_cfl", type=float, help="RBM design CFL number checked against the planned step")
    parser.add_argument("--dt", type=float, help="fixed time step")
    parser.add_argument("--kappa", type=float, help="dt = kappa*dx**exponent")
    parser.add_argument("--exponent", type=float)
    parser.add_argument("--g", type=float, help="acceleration due to gravity")
    parser.add_argument("--C", dest="C", type=float, help="RBM viscosity coefficient")
    parser.add_argument("--mu", type=float, help="rough-set threshold factor")
    parser.add_argument("--weno-p", dest="weno_p", type=int)
    parser.add_argument("--weno-eps", dest="weno_eps", type=float)
    parser.add_argument("--out-dir", dest="out_dir", help="output root (default: SWELAB_OUTPUT_ROOT)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swelab", description="Shallow-water shock-capturing scheme laboratory")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run one example with one scheme")
    _add_run_options(run)
    run.add_argument("--reference-multiplier", dest="reference_multiplier", type=int,
                     help="also compute errors against a run refined by this power of 2")

    converge = commands.add_parser("converge", help="three imbedded grids and all convergence rates")
    _add_run_options(converge)

    combined = commands.add_parser("combined-run", help="RBM-CU / RBM-A-WENO on Examples 4-6")
    _add_run_options(combined, with_scheme=False)
    combined.add_argument("--internal", choices=["cu", "aweno"], help="internal scheme (default cu)")
    combined.add_argument("--converge", action="store_true", help="run a convergence study instead")

    commands.add_parser("selftest", help="run the built-in oracle checks")

    serve = commands.add_parser("serve", help="start the HTTP API")
    serve.add_argument("--host", default="0.0.0.0")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--reload", action="store_true")
    return parser


def load_run_config(args: argparse.Namespace, preset: Optional[Dict[str, object]] = None) -> RunConfig:
    """Merge preset < config file < explicit flags and validate"""
    merged: Dict[str, object] = dict(preset or {})
    merged.update(read_config_file(getattr(args, "config", None)))
    for name in RUN_FLAGS + ("reference_multiplier",):
        value = getattr(args, name, None)
        if value is not None:
            merged[name] = value
    return RunConfig.model_validate(merged)


def load_combined_config(args: argparse.Namespace) -> RunConfig:
    """combined-run presets Example 4 with RBM-CU; the config file, flags and --internal override it"""
    config = load_run_config(args, {"scheme": "rbm-cu", "example": 4})
    if args.internal:
        config = config.model_copy(update={"scheme": f"rbm-{args.internal}"})
    if not config.is_combined:
        raise ConfigError(f"combined-run needs scheme rbm-cu or rbm-aweno, got {config.scheme}")
    if config.example < 4:
        raise ConfigError(f"combined-run expects Example 4, 5 or 6, got {config.example}")
    return config


def _run(args: argparse.Namespace) -> int:
    from .orchestrator import LabOrchestrator

    orchestrator = LabOrchestrator()
    if args.command == "run":
        summary = asyncio.run(orchestrator.run_example(load_run_config(args)))
        print(f"✅ {len(summary.snapshots)} snapshot(s) written to {summary.output_dir}")
    elif args.command == "converge":
        summary = asyncio.run(orchestrator.converge(load_run_config(args)))
        for rows in summary.w11.values():
            for row in rows:
                print(f"   N={row.n:6d}  err={row.err_l1:.3e}  rate={'-' if row.rate is None else f'{row.rate:.2f}'}")
        print(f"✅ Rates written to {summary.output_dir}")
    elif args.command == "combined-run":
        config = load_combined_config(args)
        coro = orchestrator.converge(config) if args.converge else orchestrator.run_example(config)
        summary = asyncio.run(coro)
        print(f"✅ Results written to {summary.output_dir}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s")

    if args.command == "selftest":
        from .selftest import run_selftest

        return EXIT_OK if run_selftest() else EXIT_NUMERICAL

    if args.command == "serve":
        import uvicorn

        print("🚀 Starting swelab API on http://%s:%d (docs at /docs)" % (args.host, args.port))
        uvicorn.run("swelab.main:app", host=args.host, port=args.port, reload=args.reload, log_level="info")
        return EXIT_OK

    try:
        return _run(args)
    except (ConfigError, ValidationError) as e:
        print(f"❌ Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalFailure as e:
        print(f"❌ Numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
