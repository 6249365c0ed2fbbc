"""CSV, JSON, binary and gnuplot writers for run artifacts.

All writers return the path they wrote so the runner can hash it into the
manifest. CSV files are UTF-8 with a header row and '.' decimals.
"""

import json
import logging
from pathlib import Path
from typing import Any, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from stark_lbits.hilbert import SparseOperator
from stark_lbits.schemas.experiment import SCHEMA_VERSION
from stark_lbits.schemas.results import CorrelationSeries, LocalityProfile, SpectrumSeries

logger = logging.getLogger(__name__)

# fixed float format keeps reruns byte-identical
FLOAT_FORMAT = "%.15e"
TAU_DTYPE = np.dtype("<c16")


def _to_csv(frame: pd.DataFrame, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, encoding="utf-8", lineterminator="\n")
    logger.info(f"Wrote {path.name} ({len(frame)} rows)")
    return path


def write_series_csv(series: CorrelationSeries, path: Path) -> Path:
    """Columns: t, re, im (and stderr for typicality runs)."""
    frame = pd.DataFrame(
        {"t": series.times, "re": series.values.real, "im": series.values.imag}
    )
    if series.stderr is not None:
        frame["stderr"] = np.asarray(series.stderr, dtype=np.float64)
    return _to_csv(frame, path)


def write_spectrum_csv(spec: SpectrumSeries, path: Path) -> Path:
    """Columns: omega, magnitude."""
    frame = pd.DataFrame({"omega": spec.frequencies, "magnitude": spec.magnitudes})
    return _to_csv(frame, path)


def write_locality_csv(profile: LocalityProfile, path: Path) -> Path:
    """Columns: site (1-based), weight."""
    sites = np.arange(1, profile.weights.size + 1)
    frame = pd.DataFrame({"site": sites, "weight": profile.weights})
    return _to_csv(frame, path)


def write_table_csv(rows: list[dict[str, Any]], path: Path, columns: Optional[list[str]] = None) -> Path:
    """Generic row table (sweep summaries, rotation traces)."""
    frame = pd.DataFrame(rows, columns=columns)
    return _to_csv(frame, path)


def _jsonable(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return {"re": value.real.tolist(), "im": value.imag.tolist()}
        return value.tolist()
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(value.real), "im": float(value.imag)}
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def write_json(data: dict[str, Any], path: Path, versioned: bool = True) -> Path:
    """Pretty JSON with sorted keys; versioned files carry schema_version."""
    payload = {"schema_version": SCHEMA_VERSION, **data} if versioned else data
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True, default=_jsonable) + "\n", encoding="utf-8")
    logger.info(f"Wrote {path.name}")
    return path


def write_tau(op: SparseOperator, path: Path) -> Path:
    """Binary container: little-endian uint64 dim, then dim*dim complex128 row-major."""
    mat = np.ascontiguousarray(op.to_dense(), dtype=TAU_DTYPE)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as f:
        f.write(np.array([op.dim], dtype="<u8").tobytes())
        f.write(mat.tobytes(order="C"))
    logger.info(f"Wrote {path.name} (dim={op.dim})")
    return path


def read_tau(path: Path) -> np.ndarray:
    """Inverse of write_tau."""
    raw = path.read_bytes()
    dim = int(np.frombuffer(raw[:8], dtype="<u8")[0])
    body = np.frombuffer(raw[8:], dtype=TAU_DTYPE)
    if body.size != dim * dim:
        raise ValueError(f"{path.name}: expected {dim * dim} entries, found {body.size}")
    return body.reshape(dim, dim).astype(np.complex128)


class PlotCurve(BaseModel):
    """One data column drawn by the gnuplot script."""

    data_file: str = Field(description="CSV path relative to the script")
    x_column: int = Field(default=1, ge=1)
    y_column: int = Field(default=2, ge=1)
    title: str


def write_plot_script(
    path: Path,
    curves: list[PlotCurve],
    xlabel: str,
    ylabel: str,
    image_name: str = "figure.png",
    style: str = "lines",
) -> Path:
    """gnuplot script plotting CSV columns; run it from the run directory."""
    lines = [
        f"# gnuplot script; run from this directory: gnuplot {path.name}",
        'set datafile separator ","',
        "set terminal pngcairo size 900,600",
        f'set output "{image_name}"',
        f'set xlabel "{xlabel}"',
        f'set ylabel "{ylabel}"',
        "set key top right",
        "set grid",
        "set key autotitle columnhead",
    ]
    plots = [
        f'"{c.data_file}" using {c.x_column}:{c.y_column} with {style} title "{c.title}"'
        for c in curves
    ]
    lines.append("plot " + ", \\\n     ".join(plots))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.info(f"Wrote {path.name} ({len(curves)} curves)")
    return path
