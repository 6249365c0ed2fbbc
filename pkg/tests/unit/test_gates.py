"""Unit tests for the l-bit charge algebra and the gate set."""

import numpy as np
import pytest
from pydantic import ValidationError

from stark_lbits.gates import (
    LADDER_CONSTANT,
    GateCalibrationError,
    build_lbit_charge,
    compose_cnot,
    first_maximum,
    gate_ising,
    gate_rot_x,
    gate_rot_z,
    ising_quarter_time,
    rot_x_trace,
    sigma_x,
    sigma_y,
    verify_su2,
)
from stark_lbits.hilbert import spin_op
from stark_lbits.lbits import EdgeSiteError
from stark_lbits.schemas.gates import GateSpec
from stark_lbits.schemas.model import ModelParams, SpaceSpec


class TestCharges:
    """Q_2 and its ladder algebra."""

    def test_su2_relations(self, spin_chain: SpaceSpec):
        report = verify_su2(3, spin_chain)
        assert report.all_passed
        assert report.notes["A1_ladder_residual"] < 1e-10

    def test_a3_does_not_close(self, spin_chain: SpaceSpec):
        report = verify_su2(3, spin_chain)
        assert report.notes["A3_relative_residual"] == pytest.approx(LADDER_CONSTANT)

    def test_charge_spectrum(self, spin_chain: SpaceSpec):
        report = verify_su2(2, spin_chain)
        assert report.notes["charge_spectrum"] == [-4.0, 0.0, 4.0]

    def test_charge_is_projected_sz(self, spin_chain: SpaceSpec):
        q = build_lbit_charge(3, spin_chain)
        left = spin_op("Sz", 2, spin_chain).to_dense()
        right = spin_op("Sz", 4, spin_chain).to_dense()
        eye = np.eye(spin_chain.dim)
        anti_aligned = eye / 2 - 2 * left @ right
        expected = -8 * anti_aligned @ spin_op("Sz", 3, spin_chain).to_dense()
        assert np.allclose(q.to_dense(), expected)

    def test_sigma_operators_are_hermitian(self, spin_chain: SpaceSpec):
        assert sigma_x(3, spin_chain).hermiticity_residual() == pytest.approx(0.0)
        assert sigma_y(3, spin_chain).hermiticity_residual() == pytest.approx(0.0)

    def test_edge_site(self, spin_chain: SpaceSpec):
        with pytest.raises(EdgeSiteError):
            verify_su2(1, spin_chain)


class TestRotations:
    """Single- and two-l-bit gates."""

    def test_rot_z_phases(self, tilted_params: ModelParams):
        report = gate_rot_z(0.37, tilted_params)
        assert report.checks.all_passed
        assert report.gate.kind == "rot_z"
        assert report.unitarity_residual < 1e-10

    def test_rot_z_on_phonon_model_uses_spin_chain(self, phonon_params: ModelParams):
        report = gate_rot_z(1.0, phonon_params, sites=[2])
        assert report.unitary.shape == (8, 8)
        assert report.checks.all_passed

    def test_ising_quarter_time(self):
        assert ising_quarter_time(4.0) == pytest.approx(np.pi / 32)

    def test_ising_gate(self, tilted_params: ModelParams):
        report = gate_ising(2, ising_quarter_time(4.0), tilted_params)
        assert report.checks.all_passed
        assert report.meta["charge_commutator_norm"] < 1e-10
        assert report.gate.sites == [2, 3]

    def test_ising_needs_interior_pair(self, tilted_params: ModelParams):
        with pytest.raises(EdgeSiteError):
            gate_ising(4, 0.1, tilted_params)

    def test_ising_spec_needs_adjacent_sites(self):
        with pytest.raises(ValidationError):
            GateSpec(kind="ising", sites=[2, 4], duration=0.1)

    def test_rot_x_trace_starts_on_charge(self, tilted_params: ModelParams):
        times = np.linspace(0.0, 2.0, 41)
        trace = rot_x_trace(3, tilted_params, times)
        assert trace.overlap_y[0] == pytest.approx(0.0, abs=1e-12)
        assert trace.overlap_q[0] == pytest.approx(1.0)
        assert trace.calibrated_time in times
        assert np.all(np.abs(trace.overlap_y) <= 1.0 + 1e-12)

    def test_rot_x_calibrates_on_first_maximum(self, tilted_params: ModelParams):
        times = np.linspace(0.0, 2 * np.pi, 201)
        trace = rot_x_trace(3, tilted_params, times)
        best = int(np.flatnonzero(times == trace.calibrated_time)[0])
        assert best == first_maximum(trace.overlap_y)
        # |overlap_y| starts at 0, so it only grows up to the first maximum
        assert np.all(np.diff(np.abs(trace.overlap_y[: best + 1])) >= 0)

    def test_first_maximum(self):
        t = np.linspace(0.0, 3 * np.pi, 301)
        values = np.sin(t) * (1 + 0.5 * t)
        first = first_maximum(values)
        assert np.pi / 2 <= t[first] < np.pi
        assert t[int(np.argmax(np.abs(values)))] > 2 * np.pi
        assert first_maximum(np.linspace(0.0, 1.0, 5)) == 4

    def test_rot_x_initial_slope_matches_trace(self, tilted_params: ModelParams):
        times = np.array([0.0, 1e-4])
        trace = rot_x_trace(3, tilted_params, times)
        numeric = (trace.overlap_y[1] - trace.overlap_y[0]) / 1e-4
        assert numeric == pytest.approx(trace.initial_slope, rel=1e-3, abs=1e-6)

    def test_rot_x_gate_is_unitary(self, tilted_params: ModelParams):
        report = gate_rot_x(3, 0.5, tilted_params)
        assert report.checks.all_passed
        assert "overlap_y" in report.meta


class TestCnot:
    """CNOT composition on the two-l-bit logical space."""

    @pytest.fixture
    def chain(self) -> ModelParams:
        return ModelParams(W=10.0, spec=SpaceSpec(n_sites=4))

    def test_requires_calibration(self, chain: ModelParams):
        with pytest.raises(GateCalibrationError):
            compose_cnot(2, chain, t_x=None)

    def test_report(self, chain: ModelParams):
        trace = rot_x_trace(3, chain, np.linspace(0.0, 2 * np.pi, 201))
        report = compose_cnot(2, chain, t_x=trace.calibrated_time)
        assert report.logical_dim == 4
        assert report.transitions.shape == (4, 4)
        assert report.unitarity_residual < 1e-10
        assert 0.0 <= report.leakage <= 1.0
        assert np.all(report.transitions.sum(axis=0) <= 1.0 + 1e-10)
        assert [g.kind for g in report.schedule] == ["rot_x", "ising", "rot_z", "rot_x"]
        assert report.meta["t_zz"] == pytest.approx(np.pi / 32)

    def test_sector_labels(self, chain: ModelParams):
        report = compose_cnot(2, chain, t_x=0.0)
        assert sorted(report.sector_labels) == [(-4.0, -4.0), (-4.0, 4.0), (4.0, -4.0), (4.0, 4.0)]

    def test_identity_rotations_keep_sectors(self, chain: ModelParams):
        # with t_x = 0 only diagonal gates act, so nothing leaves its sector
        report = compose_cnot(2, chain, t_x=0.0)
        assert np.allclose(report.transitions, np.eye(4))
        assert report.leakage == pytest.approx(0.0, abs=1e-12)
