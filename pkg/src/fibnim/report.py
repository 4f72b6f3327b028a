"""File output for verification sweeps: delimited curves plus rendered figures.

Only the ``--out`` path of the CLI touches this module, so matplotlib is
imported lazily and pinned to the Agg backend; nothing here writes unless
asked.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .analysis import ScanReport, _ceil_2sqrt_plus_1
from .engine import GrundyTable

__all__ = ["growth_curves", "write_growth_outputs", "write_small_values_outputs"]


def growth_curves(table: GrundyTable, n_hi: int) -> dict[str, np.ndarray]:
    """Diagonal values next to every bound the sweep talks about.

    ``log_floor`` is the literal logarithmic curve, included for the
    documentation plot even though only the staircase floor is asserted.
    """
    n = np.arange(n_hi + 1)
    diag = table.diagonal[: n_hi + 1].astype(np.int64)
    stair = [1]
    while stair[-1] <= n_hi:
        stair.append((3 * stair[-1] + 1) // 2)
    floor = np.searchsorted(np.asarray(stair), n, side="right")
    sqrt_cap = np.asarray([_ceil_2sqrt_plus_1(int(x)) for x in n])
    log_floor = np.asarray([math.log(x, 1.5) if x >= 1 else 0.0 for x in n])
    return {
        "n": n,
        "value": diag,
        "staircase_floor": floor,
        "sqrt_ceiling": sqrt_cap,
        "log_floor": log_floor,
    }


def _write_curves_csv(curves: dict[str, np.ndarray], path: Path) -> None:
    cols = ["n", "value", "staircase_floor", "sqrt_ceiling", "log_floor"]
    lines = [",".join(cols)]
    for i in range(len(curves["n"])):
        lines.append(
            f"{curves['n'][i]},{curves['value'][i]},{curves['staircase_floor'][i]},"
            f"{curves['sqrt_ceiling'][i]},{curves['log_floor'][i]:.4f}"
        )
    path.write_text("\n".join(lines) + "\n")


def _render_curves_png(curves: dict[str, np.ndarray], path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(9, 5.5))
    n = curves["n"]
    ax.step(n, curves["value"], where="post", lw=1.6, label="G(n, n)")
    ax.step(n, curves["staircase_floor"], where="post", lw=1.0, label="staircase floor")
    ax.plot(n, curves["log_floor"], lw=1.0, ls="--", label="log_{3/2}(n)")
    ax.plot(n, curves["sqrt_ceiling"], lw=1.0, ls=":", label="ceil(2*sqrt(n)) + 1")
    ax.set_xlabel("heap size n")
    ax.set_ylabel("Grundy value")
    ax.set_title("diagonal Grundy values and growth bounds")
    if len(n) > 1:
        ax.set_xlim(1, n[-1])
        ax.set_xscale("log")
    ax.legend(loc="upper left", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_growth_outputs(table: GrundyTable, report: ScanReport, out_dir: Path) -> list[Path]:
    """growth.json + growth_curves.csv + growth_curves.png under out_dir."""
    out_dir.mkdir(parents=True, exist_ok=True)
    n_hi = report.range[1]
    curves = growth_curves(table, n_hi)
    paths = [out_dir / "growth.json", out_dir / "growth_curves.csv", out_dir / "growth_curves.png"]
    paths[0].write_text(report.to_json() + "\n")
    _write_curves_csv(curves, paths[1])
    _render_curves_png(curves, paths[2])
    return paths


def write_small_values_outputs(report: ScanReport, out_dir: Path) -> list[Path]:
    """small_values.json under out_dir."""
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "small_values.json"
    path.write_text(report.to_json() + "\n")
    return [path]
