import asyncio
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .benchmarks import ExampleSpec, get_example, make_initial
from .combined import march_combined
from .config import CONVERGENCE_NU, resolve_output_root
from .errors import ConfigError
from .grids import Grid1D, ImbeddedTriple, build_triple
from .models import (
    ConvergeSummary,
    RateReport,
    RunConfig,
    RunSummary,
    SchemeConfig,
    SnapshotSummary,
    StepPolicy,
    W11Row,
)
from .output_writer import ResultWriter
from .rates import (
    exact_w11_table,
    interface_point_values,
    rates_vs_exact,
    relative_error_field,
    triple_rate_report,
)
from .swe_model import as_array, max_wave_speed
from .time_march import convergence_step_policy, march

logger = logging.getLogger(__name__)


@dataclass
class Simulation:
    """Snapshots of one grid run (basic RBM snapshots too for combined runs)"""
    grid: Grid1D
    snapshots: Dict[float, np.ndarray]
    steps: int
    basic_snapshots: Dict[float, np.ndarray] = field(default_factory=dict)


def representation_for(scheme: str) -> str:
    return "cell_average" if scheme == "cu" else "point_value"


def initial_speed(example: ExampleSpec, grid: Grid1D, scheme: str, g: float) -> float:
    U0 = as_array(make_initial(example, grid, representation_for(scheme), g))
    return max_wave_speed(U0, g)


def simulate(
    example: ExampleSpec,
    scheme: str,
    grid: Grid1D,
    policy: StepPolicy,
    times: Sequence[float],
    scheme_config: SchemeConfig,
) -> Simulation:
    """Run one scheme on one grid; blocking, meant for a worker thread"""
    U0 = make_initial(example, grid, representation_for(scheme), scheme_config.g)
    t_final = times[-1]
    if scheme in ("rbm-cu", "rbm-aweno"):
        record = march_combined(
            U0, grid, scheme.split("-")[1], policy, t_final, times, scheme_config, example.bc
        )
        return Simulation(grid, record.snapshots, record.steps, record.basic_snapshots)
    record = march(U0, grid, scheme, policy, t_final, times, scheme_config, example.bc)
    return Simulation(grid, record.snapshots, record.steps)


class LabOrchestrator:
    """
    Coordinates the laboratory pipelines: single runs, reference error
    fields and three-grid convergence studies, and writes their artifacts.
    """

    def _resolve(self, config: RunConfig) -> Tuple[ExampleSpec, SchemeConfig, Tuple[float, ...]]:
        example = get_example(config.example)
        scheme_config = config.scheme_config(default_mu=example.mu)
        times = (config.t_final,) if config.t_final is not None else example.snapshot_times
        return example, scheme_config, tuple(times)

    def _default_policy(self, config: RunConfig, grid: Grid1D, a0: float) -> StepPolicy:
        """Explicit policy if given; fixed steps for combined runs (equal dt for the WLR); else adaptive"""
        explicit = config.explicit_step_policy()
        if explicit is not None:
            return explicit
        if config.is_combined:
            if not a0 > 0:
                raise ConfigError("initial data has zero wave speed: give dt explicitly")
            return StepPolicy(mode="fixed", dt=CONVERGENCE_NU * grid.dx / a0)
        return StepPolicy(mode="adaptive", cfl=config.cfl)

    async def run_example(self, config: RunConfig) -> RunSummary:
        """
        Run one example with one scheme and write its artifacts.

        Args:
            config: validated run configuration

        Returns:
            RunSummary listing the directory and files of every output time
        """
        example, scheme_config, times = self._resolve(config)
        grid = example.grid(config.cells)
        writer = ResultWriter(resolve_output_root(config.out_dir))
        run_dir = writer.run_directory(example.id, config.scheme, config.cells)

        a0 = initial_speed(example, grid, config.scheme, scheme_config.g)
        policy = self._default_policy(config, grid, a0)

        logger.info("🌊 Example %d, %s on %d cells, dt mode %s", example.id, config.scheme, grid.m, policy.mode)
        sim = await asyncio.to_thread(simulate, example, config.scheme, grid, policy, times, scheme_config)

        errors: Dict[float, np.ndarray] = {}
        if config.reference_multiplier:
            logger.info("🔭 Computing reference solution (x%d)", config.reference_multiplier)
            errors = await self.reference_error_field(config, config.reference_multiplier, sim)
        else:
            errors = self._exact_error_fields(example, config.scheme, sim, scheme_config)

        summary = RunSummary(
            example=example.id,
            scheme=config.scheme,
            cells=grid.m,
            steps=sim.steps,
            dt_mode=policy.mode,
            output_dir=str(run_dir),
        )
        logger.info("💾 Writing results to %s", run_dir)
        for t, U in sim.snapshots.items():
            directory = writer.time_directory(run_dir, t)
            files = [writer.write_solution(directory, grid.centers, U)]
            if t in sim.basic_snapshots:
                files.append(writer.write_solution(directory, grid.centers, sim.basic_snapshots[t], "solution_basic.csv"))
            if t in errors:
                files.append(writer.write_error(directory, grid.interfaces, errors[t]))
            files.append(writer.write_plot_script(directory))
            summary.snapshots.append(SnapshotSummary(time=t, directory=str(directory), files=[p.name for p in files]))
        writer.write_summary(run_dir, summary)

        logger.info("✅ Run complete (%d steps)", sim.steps)
        return summary

    def _exact_error_fields(
        self, example: ExampleSpec, scheme: str, sim: Simulation, scheme_config: SchemeConfig
    ) -> Dict[float, np.ndarray]:
        """Error fields against the exact solution, at the times where one is known"""
        errors = {}
        x = sim.grid.interfaces
        for t, U in sim.snapshots.items():
            exact = example.exact(x, t, scheme_config.g)
            if exact is None:
                continue
            h = interface_point_values(U, sim.grid, scheme, scheme_config.g, scheme_config.weno, example.bc)
            errors[t] = relative_error_field(h, exact[0])
        return errors

    async def reference_error_field(
        self,
        config: RunConfig,
        reference_multiplier: int,
        sim: Optional[Simulation] = None,
    ) -> Dict[float, np.ndarray]:
        """
        log10 relative depth errors against the same scheme on a refined mesh.

        Both solutions are compared at the interfaces of the base grid, which
        are interfaces of the reference grid as well.
        """
        if reference_multiplier < 1 or reference_multiplier & (reference_multiplier - 1):
            raise ConfigError(f"reference multiplier must be a power of 2, got {reference_multiplier}")
        example, scheme_config, times = self._resolve(config)
        grid = example.grid(config.cells)
        ref_grid = grid.refined(reference_multiplier)

        a0 = initial_speed(example, ref_grid, config.scheme, scheme_config.g)
        policy = self._default_policy(config, grid, a0)
        ref_policy = self._default_policy(config, ref_grid, a0)
        jobs = [asyncio.to_thread(simulate, example, config.scheme, ref_grid, ref_policy, times, scheme_config)]
        if sim is None:
            jobs.append(asyncio.to_thread(simulate, example, config.scheme, grid, policy, times, scheme_config))
        results = await asyncio.gather(*jobs)
        reference = results[0]
        sim = sim if sim is not None else results[1]

        errors = {}
        for t in times:
            h = interface_point_values(
                sim.snapshots[t], grid, config.scheme, scheme_config.g, scheme_config.weno, example.bc
            )
            h_ref = interface_point_values(
                reference.snapshots[t], ref_grid, config.scheme, scheme_config.g, scheme_config.weno, example.bc
            )[::reference_multiplier]
            errors[t] = relative_error_field(h, h_ref)
        return errors

    def _triple_policy(self, config: RunConfig, example: ExampleSpec, triple: ImbeddedTriple, g: float) -> StepPolicy:
        explicit = config.explicit_step_policy()
        if explicit is not None:
            return explicit
        a0 = initial_speed(example, triple.fine, config.scheme, g)
        base = "aweno" if config.scheme == "aweno" else "cu"
        return convergence_step_policy(base, triple.coarse.dx, triple.fine.dx, a0)

    async def converge(self, config: RunConfig) -> ConvergeSummary:
        """
        Three-grid convergence study with N = config.cells coarse cells.

        The three grids share one time step and run concurrently. For the
        isolated-shock examples the rates against the exact solution are
        reported as well.
        """
        example, scheme_config, times = self._resolve(config)
        a, b = example.domain
        logger.info("📐 Building imbedded grids N=%d, %d, %d", config.cells, 2 * config.cells, 4 * config.cells)
        triple = build_triple(a, b, config.cells)
        policy = self._triple_policy(config, example, triple, scheme_config.g)

        logger.info("🌊 Marching %s on three levels (dt mode %s)", config.scheme, policy.mode)
        sims: List[Simulation] = await asyncio.gather(
            *(
                asyncio.to_thread(simulate, example, config.scheme, grid, policy, times, scheme_config)
                for grid in triple
            )
        )

        writer = ResultWriter(resolve_output_root(config.out_dir))
        run_dir = writer.run_directory(example.id, config.scheme, config.cells) / "converge"
        summary = ConvergeSummary(
            example=example.id,
            scheme=config.scheme,
            N=triple.N,
            dt=policy.dt if policy.mode == "fixed" else None,
            output_dir=str(run_dir),
        )

        logger.info("📈 Computing rates")
        for t in times:
            fields = [sim.snapshots[t] for sim in sims]
            report = triple_rate_report(
                fields, triple, config.scheme, scheme_config.g, t, scheme_config.weno, example.bc
            )
            e1, e2 = report.w11_errors
            rows = [
                W11Row(n=triple.N, err_l1=e1),
                W11Row(n=2 * triple.N, err_l1=e2, rate=report.w11_rate),
            ]
            directory = writer.time_directory(run_dir, t)
            files = writer.write_rates(directory, report)
            files.append(writer.write_w11(directory, rows))
            summary.reports.append(report)
            summary.w11[f"{t:g}"] = rows

            if example.has_exact:
                exact_report, exact_rows = self._exact_rates(example, config.scheme, sims, triple, t, scheme_config)
                files += writer.write_rates(directory, exact_report, prefix="rates_exact")
                files.append(writer.write_w11(directory, exact_rows, name="w11_exact.csv"))
                summary.exact_reports.append(exact_report)
                summary.exact_w11[f"{t:g}"] = exact_rows

            files.append(writer.write_plot_script(directory))
            summary.snapshots.append(SnapshotSummary(time=t, directory=str(directory), files=[p.name for p in files]))

        writer.write_summary(run_dir, summary)
        logger.info("✅ Convergence study complete")
        return summary

    def _exact_rates(
        self,
        example: ExampleSpec,
        scheme: str,
        sims: Sequence[Simulation],
        triple: ImbeddedTriple,
        t: float,
        scheme_config: SchemeConfig,
    ) -> Tuple[RateReport, List[W11Row]]:
        g = scheme_config.g
        report = rates_vs_exact(
            sims[0].snapshots[t],
            sims[1].snapshots[t],
            triple.coarse,
            scheme,
            lambda x: example.exact(x, t, g),
            lambda x: example.exact_antiderivative(x, t),
            g,
            t,
            scheme_config.weno,
            example.bc,
        )
        rows = exact_w11_table(
            [sim.snapshots[t] for sim in sims],
            list(triple),
            scheme,
            lambda x: example.exact_antiderivative(x, t),
            example.bc,
        )
        return report, rows
