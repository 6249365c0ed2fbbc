"""Unit tests for artifact writers and the run manifest."""

import hashlib
import json
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from stark_lbits.hilbert import spin_op
from stark_lbits.outputs import (
    MANIFEST_NAME,
    OutputCollisionError,
    PlotCurve,
    build_manifest,
    collect_outputs,
    hash_file,
    load_manifest,
    prepare_run_dir,
    read_tau,
    write_json,
    write_locality_csv,
    write_manifest,
    write_plot_script,
    write_series_csv,
    write_tau,
)
from stark_lbits.schemas.model import SpaceSpec
from stark_lbits.schemas.results import CorrelationSeries, LocalityProfile


@pytest.fixture
def series() -> CorrelationSeries:
    times = np.linspace(0.0, 1.0, 11)
    return CorrelationSeries(times=times, values=np.exp(-1j * times))


class TestCsv:
    """CSV layout."""

    def test_series_columns(self, series: CorrelationSeries, tmp_path: Path):
        path = write_series_csv(series, tmp_path / "autocorr_Sx.csv")
        frame = pd.read_csv(path)
        assert list(frame.columns) == ["t", "re", "im"]
        assert len(frame) == 11
        assert np.allclose(frame["re"], np.cos(series.times))
        assert np.allclose(frame["im"], -np.sin(series.times))

    def test_stderr_column(self, series: CorrelationSeries, tmp_path: Path):
        noisy = series.model_copy(update={"stderr": np.full(11, 0.01), "method": "typicality"})
        frame = pd.read_csv(write_series_csv(noisy, tmp_path / "s.csv"))
        assert list(frame.columns) == ["t", "re", "im", "stderr"]

    def test_rewrite_is_byte_identical(self, series: CorrelationSeries, tmp_path: Path):
        a = write_series_csv(series, tmp_path / "a.csv")
        b = write_series_csv(series, tmp_path / "b.csv")
        assert a.read_bytes() == b.read_bytes()

    def test_locality_sites_are_one_based(self, tmp_path: Path):
        profile = LocalityProfile(
            weights=np.array([0.25, 0.5, 0.25]), normalization=1.0, identity_weight=0.0
        )
        frame = pd.read_csv(write_locality_csv(profile, tmp_path / "locality.csv"))
        assert list(frame["site"]) == [1, 2, 3]


class TestJson:
    """meta.json conventions."""

    def test_schema_version_and_complex(self, tmp_path: Path):
        path = write_json(
            {"values": np.array([1 + 2j, 3j]), "n": np.int64(3), "ok": np.bool_(True)},
            tmp_path / "meta.json",
        )
        data = json.loads(path.read_text())
        assert data["schema_version"] == 1
        assert data["values"] == {"re": [1.0, 0.0], "im": [2.0, 3.0]}
        assert data["n"] == 3
        assert data["ok"] is True

    def test_unversioned(self, tmp_path: Path):
        data = json.loads(write_json({"a": 1}, tmp_path / "x.json", versioned=False).read_text())
        assert "schema_version" not in data


class TestTau:
    """Binary tau container."""

    def test_header_and_contents(self, tmp_path: Path):
        op = spin_op("Sp", 1, SpaceSpec(n_sites=2))
        path = write_tau(op, tmp_path / "tau_A1.bin")
        raw = path.read_bytes()
        assert int.from_bytes(raw[:8], "little") == 4
        assert len(raw) == 8 + 16 * 16
        assert np.array_equal(read_tau(path), op.to_dense())

    def test_truncated_file(self, tmp_path: Path):
        op = spin_op("Sx", 1, SpaceSpec(n_sites=2))
        path = write_tau(op, tmp_path / "tau.bin")
        path.write_bytes(path.read_bytes()[:-16])
        with pytest.raises(ValueError):
            read_tau(path)


def test_plot_script(tmp_path: Path):
    path = write_plot_script(
        tmp_path / "plot.gp",
        [PlotCurve(data_file="autocorr_Sx.csv", title="Re F")],
        xlabel="t J",
        ylabel="F",
    )
    text = path.read_text()
    assert text.startswith("# gnuplot script")
    assert 'set datafile separator ","' in text
    assert '"autocorr_Sx.csv" using 1:2 with lines title "Re F"' in text


class TestManifest:
    """Run directories and manifest files."""

    def test_prepare_refuses_non_empty(self, tmp_path: Path):
        run_dir = tmp_path / "run"
        prepare_run_dir(run_dir)
        (run_dir / "old.csv").write_text("x")
        with pytest.raises(OutputCollisionError):
            prepare_run_dir(run_dir)

    def test_prepare_force_clears(self, tmp_path: Path):
        run_dir = tmp_path / "run"
        run_dir.mkdir()
        (run_dir / "old.csv").write_text("x")
        prepare_run_dir(run_dir, force=True)
        assert list(run_dir.iterdir()) == []

    def test_hash_file(self, tmp_path: Path):
        path = tmp_path / "data.bin"
        path.write_bytes(b"stark" * 2000)
        assert hash_file(path) == hashlib.sha256(b"stark" * 2000).hexdigest()

    def test_collect_skips_manifest(self, tmp_path: Path):
        (tmp_path / "b.csv").write_text("1")
        (tmp_path / "a.csv").write_text("22")
        (tmp_path / "point_00").mkdir()
        (tmp_path / "point_00" / "meta.json").write_text("{}")
        (tmp_path / MANIFEST_NAME).write_text("{}")
        files = collect_outputs(tmp_path)
        assert [f.path for f in files] == ["a.csv", "b.csv", "point_00/meta.json"]
        assert files[0].size == 2

    def test_write_and_load(self, tmp_path: Path):
        (tmp_path / "a.csv").write_text("t,re,im\n")
        manifest = build_manifest(tmp_path, {"experiment": "autocorr"}, "0.1.0", 1.5, seed=3)
        write_manifest(manifest, tmp_path)
        loaded = load_manifest(tmp_path)
        assert loaded.fingerprint() == manifest.fingerprint()
        assert loaded.seed == 3
        assert [f.path for f in loaded.files] == ["a.csv"]
        assert not list(tmp_path.glob("*.tmp"))
