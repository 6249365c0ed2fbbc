"""Integration tests: whole experiments from config to manifest."""

import json
from pathlib import Path

import numpy as np
import pandas as pd
import pytest
from typer.testing import CliRunner

from stark_lbits.cli import app
from stark_lbits.config import settings
from stark_lbits.outputs import load_manifest, read_tau
from stark_lbits.presets import preset_config
from stark_lbits.runner import ExperimentRunner
from stark_lbits.schemas.experiment import ExperimentConfig

SMALL_MODEL = {"n_sites": 3, "boson_levels": 2, "W": 6.0, "omega0": 3.0, "lambda0": 1.0}


def _config(tmp_path: Path, **fields) -> ExperimentConfig:
    data = {"model": SMALL_MODEL, "grid": {"dt": 0.05, "t_max": 4.0}}
    data.update(fields)
    data.setdefault("output_dir", str(tmp_path / data["experiment"]))
    return ExperimentConfig.model_validate(data)


def _read_json(path: Path) -> dict:
    with open(path, "r") as f:
        return json.load(f)


def test_spectrum_run(tmp_path: Path):
    config = _config(tmp_path, experiment="spectrum")
    manifest = ExperimentRunner().run(config)
    paths = {f.path for f in manifest.files}
    assert {"spectrum_Sx.csv", "spectrum_SzSp.csv", "plot_spectrum.gp"} <= paths

    frame = pd.read_csv(tmp_path / "spectrum" / "spectrum_Sx.csv")
    assert list(frame.columns) == ["omega", "magnitude"]
    assert (frame["magnitude"] >= 0).all()


def test_typicality_run_is_seeded(tmp_path: Path):
    config = _config(tmp_path, experiment="autocorr", method={"backend": "typicality", "samples": 4, "seed": 11})
    first = ExperimentRunner().run(config, out=tmp_path / "a")
    second = ExperimentRunner().run(config, out=tmp_path / "b")
    assert first.fingerprint() == second.fingerprint()

    meta = _read_json(tmp_path / "a" / "meta.json")
    assert meta["method"] == "typicality"
    assert meta["samples"] == 4
    assert meta["seed"] == 11
    assert meta["columns"] == ["t", "re", "im", "stderr"]

    other = ExperimentRunner().run(config, out=tmp_path / "c", seed=12)
    assert other.fingerprint() != first.fingerprint()


def test_lbit_run(tmp_path: Path):
    config = _config(
        tmp_path,
        experiment="lbit",
        model={**SMALL_MODEL, "W": 10.0},
        lbit={"seeds": [1, 4], "filter_horizon": 50.0, "dump_tau": True},
    )
    manifest = ExperimentRunner().run(config)
    run_dir = tmp_path / "lbit"
    paths = {f.path for f in manifest.files}
    for label in ("A1", "A4"):
        assert {f"locality_{label}.csv", f"autocorr_tau_{label}.csv", f"spectrum_tau_{label}.csv",
                f"tau_{label}.bin"} <= paths

    meta = _read_json(run_dir / "meta.json")
    assert meta["site"] == 2
    assert meta["seeds"]["A1"]["peak_site"] == 2
    assert read_tau(run_dir / "tau_A1.bin").shape == (64, 64)

    weights = pd.read_csv(run_dir / "locality_A1.csv")["weight"]
    assert weights.sum() == pytest.approx(1.0)


def test_gates_run(tmp_path: Path):
    config = _config(
        tmp_path,
        experiment="gates",
        model={"n_sites": 4, "W": 10.0},
        gates={"site": 2, "recovery_t_max": 10.0, "error_window": (4.0, 5.0)},
    )
    manifest = ExperimentRunner().run(config)
    run_dir = tmp_path / "gates"
    assert {f.path for f in manifest.files} == {
        "rotation_trace.csv",
        "recovery_none.csv",
        "recovery_flip.csv",
        "recovery_dephasing.csv",
        "recovery_uniform.csv",
        "recovery_baseline.csv",
        "degradation.csv",
        "gates.json",
        "plot.gp",
    }

    report = _read_json(run_dir / "gates.json")
    assert report["recovery"]["flip"]["class"] == "generic"
    assert report["recovery"]["uniform"]["class"] == "resonant"
    assert report["recovery"]["none"]["degradation"] == pytest.approx(0.0, abs=1e-9)
    assert report["cnot"]["logical_dim"] == 4
    assert all(c["passed"] for c in report["su2"]["checks"])

    assert report["relax"] == "system"
    assert report["recovery"]["none"]["recovered"] is False

    degradation = pd.read_csv(run_dir / "degradation.csv").set_index("W")
    assert list(degradation.columns) == ["flip", "dephasing"]
    assert degradation.loc[20.0, "flip"] < degradation.loc[10.0, "flip"] < degradation.loc[5.0, "flip"]
    assert (degradation["dephasing"] > degradation["flip"]).all()
    assert report["degradation_monotone_in_W"] is True
    assert report["resonant_exceeds_generic"] is True
    assert set(report["degradation_vs_W"]) == {"flip", "dephasing"}


def test_sweep_records_failed_points(tmp_path: Path):
    # N=2 passes model validation but has no interior auto-correlation site
    config = _config(tmp_path, experiment="sweep", sweep={"axis": "N", "values": [3, 2]})
    manifest = ExperimentRunner(workers=2).run(config)
    run_dir = tmp_path / "sweep"

    assert list(manifest.failures) == ["point_01"]
    paths = {f.path for f in manifest.files}
    assert "summary.csv" in paths
    assert "point_00/autocorr_Sx.csv" in paths
    assert not any(p.startswith("point_00/manifest") for p in paths)

    summary = pd.read_csv(run_dir / "summary.csv")
    assert list(summary["status"]) == ["ok", "failed"]
    assert np.isfinite(summary.loc[0, "envelope_ratio"])


def test_verify_command(tmp_path: Path, monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setattr(settings, "verify_sites", [4])
    out = tmp_path / "verify"
    result = CliRunner().invoke(app, ["verify", "--out", str(out)])
    assert result.exit_code == 0, result.output

    report = _read_json(out / "verify.json")
    assert report["all_passed"]
    assert report["passed"] == report["total"]
    names = [c["name"] for c in report["checks"]]
    assert any("spin-3/2" in name for name in names)
    assert load_manifest(out).files[0].path == "verify.json"


@pytest.mark.slow
def test_bloch_n7_w6_persistent_oscillation(tmp_path: Path):
    ExperimentRunner().run(preset_config("bloch_n7_w6"), out=tmp_path / "bloch_n7_w6")
    metrics = _read_json(tmp_path / "bloch_n7_w6" / "meta.json")["metrics"]
    assert metrics["Sx"]["envelope_ratio"] >= 0.5
    assert metrics["SzSp"]["envelope_first_half"] < metrics["Sx"]["envelope_first_half"]


@pytest.mark.slow
def test_lbit_n5_is_local(tmp_path: Path):
    ExperimentRunner().run(preset_config("lbit_n5"), out=tmp_path / "lbit_n5")
    a1 = _read_json(tmp_path / "lbit_n5" / "meta.json")["seeds"]["A1"]
    assert a1["peak_site"] == 3
    assert a1["near_weight"] >= 0.5
    assert a1["frequency_offset_bins"] <= 1.0


@pytest.mark.slow
def test_tilt_sweep_raises_frequency(tmp_path: Path):
    ExperimentRunner().run(preset_config("tilt_sweep"), out=tmp_path / "tilt")
    summary = pd.read_csv(tmp_path / "tilt" / "summary.csv")
    assert list(summary["status"]) == ["ok", "ok"]
    assert summary.loc[1, "dominant_frequency"] > summary.loc[0, "dominant_frequency"]


@pytest.mark.slow
def test_coupling_sweep_loses_coherence(tmp_path: Path):
    ExperimentRunner().run(preset_config("coupling_sweep"), out=tmp_path / "coupling")
    summary = pd.read_csv(tmp_path / "coupling" / "summary.csv")
    assert list(summary["status"]) == ["ok", "ok", "ok"]
    entropy = summary["spectral_entropy"]
    # at lambda0 = 3J the coupling reaches the tilt W = 3J
    assert entropy[2] > entropy[0]
    assert entropy[2] > entropy[1]


@pytest.mark.slow
def test_phonon_energy_sweep_keeps_amplitude(tmp_path: Path):
    ExperimentRunner().run(preset_config("phonon_energy_sweep"), out=tmp_path / "phonon_energy")
    summary = pd.read_csv(tmp_path / "phonon_energy" / "summary.csv")
    assert list(summary["status"]) == ["ok", "ok", "ok"]
    envelope = summary["envelope_second_half"]
    assert envelope[2] >= envelope[0]
    # four typicality samples per point, so neighbours may dip by a few percent
    assert envelope[1] >= 0.9 * envelope[0]
    assert envelope[2] >= 0.9 * envelope[1]
