"""Transverse auto-correlation of the chain centre, with and without spectra."""

import logging
from pathlib import Path

import numpy as np

from stark_lbits.correlation import (
    dominant_frequency,
    envelope_amplitude,
    fluctuation_exact,
    fluctuation_typicality_many,
    make_grid,
    spectral_entropy,
    spectrum,
)
from stark_lbits.correlation.spectrum import Window
from stark_lbits.experiments.base import (
    ExperimentOutcome,
    center_site,
    config_echo,
    diagonalize,
)
from stark_lbits.hamiltonians import build_full
from stark_lbits.hilbert import spin_op, spin_product
from stark_lbits.outputs import (
    PlotCurve,
    write_json,
    write_plot_script,
    write_series_csv,
    write_spectrum_csv,
)
from stark_lbits.schemas.experiment import ExperimentConfig
from stark_lbits.schemas.results import CorrelationSeries

logger = logging.getLogger(__name__)

# file stem -> label of the observable Q; B is S^x at the centre for both
OBSERVABLES = {"Sx": "S^x_c", "SzSp": "S^z_{c-1} S^+_c"}


def compute_autocorr(config: ExperimentConfig) -> dict[str, CorrelationSeries]:
    """F_QB(t) for Q in {S^x_c, S^z_{c-1} S^+_c} and B = S^x_c, c = (N+1)/2.

    Raises:
        ExperimentError: Exact backend above the dense ceiling
        KrylovConvergenceError: Typicality backend failed to converge
    """
    params = config.params()
    spec = params.spec
    c = center_site(spec.n_sites)
    times = make_grid(config.grid.dt, config.grid.t_max)

    q_sx = spin_op("Sx", c, spec)
    q_szsp = spin_product({c - 1: "Sz", c: "Sp"}, spec)
    b = spin_op("Sx", c, spec)
    h = build_full(params)
    meta = {"site": c, "B": "S^x_c", "dim": spec.dim}

    if config.method.backend == "exact":
        eig = diagonalize(h, "Exact auto-correlation", hint="use the typicality backend")
        series = [
            fluctuation_exact(q, b, eig, times, meta={**meta, "Q": OBSERVABLES[name]})
            for name, q in zip(OBSERVABLES, (q_sx, q_szsp))
        ]
    else:
        series = fluctuation_typicality_many(
            [q_sx, q_szsp],
            b,
            h,
            times,
            samples=config.method.samples,
            seed=config.method.seed,
            meta=meta,
        )
        for s, name in zip(series, OBSERVABLES):
            s.meta["Q"] = OBSERVABLES[name]
    return dict(zip(OBSERVABLES, series))


def summarize(series: CorrelationSeries, window: Window = "none") -> dict[str, float]:
    """Envelope, dominant frequency and spectral entropy of one series."""
    spec = spectrum(series, window=window)
    first = envelope_amplitude(series, 0.0, 0.5)
    second = envelope_amplitude(series, 0.5, 1.0)
    return {
        "envelope_first_half": first,
        "envelope_second_half": second,
        "envelope_ratio": second / first if first > 0 else 0.0,
        "dominant_frequency": dominant_frequency(spec, exclude_dc=True),
        "spectral_entropy": spectral_entropy(spec),
        "bin_width": spec.bin_width,
        "imag_max": float(np.max(np.abs(series.values.imag))),
    }


def run_autocorr(config: ExperimentConfig, run_dir: Path, with_spectra: bool = False) -> ExperimentOutcome:
    """autocorr_Sx.csv, autocorr_SzSp.csv, meta.json and plot.gp (plus spectra on request)."""
    results = compute_autocorr(config)
    files: list[Path] = []
    for name, series in results.items():
        files.append(write_series_csv(series, run_dir / f"autocorr_{name}.csv"))

    metrics = {name: summarize(series, config.window) for name, series in results.items()}
    if with_spectra:
        for name, series in results.items():
            spec = spectrum(series, window=config.window)
            files.append(write_spectrum_csv(spec, run_dir / f"spectrum_{name}.csv"))

    first = next(iter(results.values()))
    meta = {
        "experiment": config.experiment,
        "config": config_echo(config),
        "method": first.method,
        "samples": first.samples,
        "seed": first.seed,
        "site": first.meta.get("site"),
        "operators": {name: s.meta.get("Q") for name, s in results.items()},
        "columns": ["t", "re", "im"] + (["stderr"] if first.stderr is not None else []),
        "metrics": metrics,
    }
    files.append(write_json(meta, run_dir / "meta.json"))

    curves = [
        PlotCurve(data_file=f"autocorr_{name}.csv", title=f"Re F, Q = {label}")
        for name, label in OBSERVABLES.items()
    ]
    files.append(
        write_plot_script(run_dir / "plot.gp", curves, xlabel="t J", ylabel="F_{QB}(t)", image_name="autocorr.png")
    )
    if with_spectra:
        spectral = [
            PlotCurve(data_file=f"spectrum_{name}.csv", title=f"|F(omega)|, Q = {label}")
            for name, label in OBSERVABLES.items()
        ]
        files.append(
            write_plot_script(
                run_dir / "plot_spectrum.gp", spectral, xlabel="omega / J", ylabel="|F(omega)|",
                image_name="spectrum.png",
            )
        )

    sx = metrics["Sx"]
    logger.info(
        f"Auto-correlation done: envelope ratio {sx['envelope_ratio']:.3f}, "
        f"dominant omega {sx['dominant_frequency']:.3f}"
    )
    return ExperimentOutcome(files=files, metrics={"Sx": sx, "SzSp": metrics["SzSp"]})


def run_spectrum(config: ExperimentConfig, run_dir: Path) -> ExperimentOutcome:
    return run_autocorr(config, run_dir, with_spectra=True)
