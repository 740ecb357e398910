from pathlib import Path
from typing import List, Sequence

import numpy as np
from pydantic import BaseModel

from .models import RateReport, W11Row
from .rates import subsample

# 17 significant digits and no timestamps, so identical runs give identical files.
NUMBER_FORMAT = "%.17g"

PLOT_SCRIPT = '''"""Plot the CSV files in this directory (needs matplotlib)."""
from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np

here = Path(__file__).parent


def load(name):
    path = here / name
    return np.genfromtxt(path, delimiter=",", names=True) if path.exists() else None


panels = [
    ("solution.csv", "h", "water depth"),
    ("solution_basic.csv", "h", "basic RBM depth"),
    ("error.csv", "log10_rel_err", "log10 relative error"),
    ("rates_pointwise.csv", "r_ave", "averaged pointwise rate"),
    ("rates_integral.csv", "r_int", "integral rate"),
]
panels = [(load(name), column, title) for name, column, title in panels]
panels = [p for p in panels if p[0] is not None]
fig, axes = plt.subplots(len(panels), 1, figsize=(7, 2.6 * len(panels)), squeeze=False)
for ax, (data, column, title) in zip(axes[:, 0], panels):
    ax.plot(data["x"], data[column], lw=1)
    ax.set_title(title)
fig.tight_layout()
fig.savefig(here / "plots.png", dpi=150)
'''


class ResultWriter:
    """Writes run artifacts under one output root, one directory per run and time"""

    def __init__(self, root: Path):
        self.root = Path(root)

    def run_directory(self, example: int, scheme: str, cells: int) -> Path:
        return self.root / f"ex{example}-{scheme}-{cells}"

    def time_directory(self, run_dir: Path, t: float) -> Path:
        directory = run_dir / f"t{t:g}"
        directory.mkdir(parents=True, exist_ok=True)
        return directory

    def _write_columns(self, path: Path, names: Sequence[str], columns: Sequence[np.ndarray]) -> Path:
        table = np.column_stack([np.asarray(c, dtype=float) for c in columns])
        np.savetxt(path, table, fmt=NUMBER_FORMAT, delimiter=",", header=",".join(names), comments="")
        return path

    def write_solution(self, directory: Path, x: np.ndarray, U: np.ndarray, name: str = "solution.csv") -> Path:
        """Columns x, h, q"""
        return self._write_columns(directory / name, ("x", "h", "q"), (x, U[0], U[1]))

    def write_error(self, directory: Path, x: np.ndarray, err: np.ndarray, name: str = "error.csv") -> Path:
        return self._write_columns(directory / name, ("x", "log10_rel_err"), (x, err))

    def write_rates(self, directory: Path, report: RateReport, prefix: str = "rates") -> List[Path]:
        """
        Pointwise rates (x, r, r_ave, r_sub) and integral rates (x, r_int).

        r_sub repeats r at every `stride`-th coarse point and is NaN elsewhere.
        """
        r = report.column("pointwise")
        pointwise = self._write_columns(
            directory / f"{prefix}_pointwise.csv",
            ("x", "r", "r_ave", "r_sub"),
            (report.x, r, report.column("averaged"), subsample(r, report.stride)),
        )
        integral = self._write_columns(
            directory / f"{prefix}_integral.csv", ("x", "r_int"), (report.x, report.column("integral"))
        )
        return [pointwise, integral]

    def write_w11(self, directory: Path, rows: Sequence[W11Row], name: str = "w11.csv") -> Path:
        """Table rows N, err_L1, rate (nan where no rate applies)"""
        nan = float("nan")
        columns = (
            [row.n for row in rows],
            [nan if row.err_l1 is None else row.err_l1 for row in rows],
            [nan if row.rate is None else row.rate for row in rows],
        )
        table = np.column_stack([np.asarray(c, dtype=float) for c in columns])
        path = directory / name
        np.savetxt(path, table, fmt=("%d", NUMBER_FORMAT, NUMBER_FORMAT), delimiter=",",
                   header="N,err_L1,rate", comments="")
        return path

    def write_plot_script(self, directory: Path) -> Path:
        path = directory / "plot.py"
        path.write_text(PLOT_SCRIPT)
        return path

    def write_summary(self, directory: Path, summary: BaseModel) -> Path:
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / "summary.json"
        path.write_text(summary.model_dump_json(indent=2))
        return path
