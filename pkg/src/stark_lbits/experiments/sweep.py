"""Parameter sweeps: one auto-correlation sub-run per value plus a summary table."""

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Optional

from stark_lbits.config import settings
from stark_lbits.experiments.autocorr import run_autocorr, run_spectrum
from stark_lbits.experiments.base import ExperimentOutcome
from stark_lbits.outputs import PlotCurve, write_plot_script, write_table_csv
from stark_lbits.schemas.experiment import ExperimentConfig

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = [
    "point",
    "axis",
    "value",
    "status",
    "envelope_first_half",
    "envelope_second_half",
    "envelope_ratio",
    "dominant_frequency",
    "spectral_entropy",
    "error",
]

_POINT_RUNNERS: dict[str, Callable[[ExperimentConfig, Path], ExperimentOutcome]] = {
    "autocorr": run_autocorr,
    "spectrum": run_spectrum,
}


def point_dir_name(index: int) -> str:
    return f"point_{index:02d}"


def _run_point(index: int, config: ExperimentConfig, value: float, run_dir: Path) -> dict[str, Any]:
    assert config.sweep is not None
    row: dict[str, Any] = {
        "point": index,
        "axis": config.sweep.axis,
        "value": value,
        "status": "ok",
        "error": "",
    }
    try:
        sub = config.for_point(value)
        outcome = _POINT_RUNNERS[sub.experiment](sub, run_dir / point_dir_name(index))
        sx = outcome.metrics["Sx"]
        for key in SUMMARY_COLUMNS[4:9]:
            row[key] = sx[key]
    except Exception as e:
        logger.warning(f"Sweep point {index} ({config.sweep.axis}={value}) failed: {e}")
        row["status"] = "failed"
        row["error"] = f"{type(e).__name__}: {e}"
    return row


def run_sweep_points(
    config: ExperimentConfig, run_dir: Path, workers: Optional[int] = None
) -> ExperimentOutcome:
    """Run every sweep value in its own point_XX directory and tabulate summary.csv.

    Failed points are recorded in the summary with status "failed" and do not
    stop the sweep. Point sub-runs do not write manifests; the sweep manifest
    lists their files.
    """
    if config.sweep is None:
        raise ValueError("Sweep config has no 'sweep' section")
    values = config.sweep.values
    workers = workers or settings.max_workers
    logger.info(f"Sweep over {config.sweep.axis} = {values} with {workers} workers")

    if workers > 1 and len(values) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(
                pool.map(lambda iv: _run_point(iv[0], config, iv[1], run_dir), enumerate(values))
            )
    else:
        rows = [_run_point(i, config, v, run_dir) for i, v in enumerate(values)]

    files = [write_table_csv(rows, run_dir / "summary.csv", columns=SUMMARY_COLUMNS)]
    files.append(
        write_plot_script(
            run_dir / "plot.gp",
            [
                PlotCurve(data_file="summary.csv", x_column=3, y_column=7, title="envelope ratio"),
                PlotCurve(data_file="summary.csv", x_column=3, y_column=9, title="spectral entropy"),
            ],
            xlabel=config.sweep.axis,
            ylabel="metric",
            image_name="sweep.png",
            style="linespoints",
        )
    )
    failures = {point_dir_name(r["point"]): r["error"] for r in rows if r["status"] == "failed"}
    return ExperimentOutcome(files=files, metrics={"rows": rows, "failures": failures})
