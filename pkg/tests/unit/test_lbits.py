"""Unit tests for the analytic l-bit seeds and the spectral filter."""

import numpy as np
import pytest

from stark_lbits.hamiltonians import ModelSpecError, build_effective, build_full, build_spin32_sector
from stark_lbits.hilbert import hs_norm
from stark_lbits.lbits import (
    SEED_KINDS,
    EdgeSiteError,
    build_charge,
    build_sector_seed,
    build_seed,
    construct_tau,
    eigenoperator_residual,
    seed_frequency,
    seed_operator,
    sinc_filter,
    spin32_frequencies,
)
from stark_lbits.propagation import dense_eig
from stark_lbits.schemas.model import ModelParams, SpaceSpec


class TestSeeds:
    """Eigenoperators of the effective Hamiltonian."""

    @pytest.mark.parametrize("k", SEED_KINDS)
    def test_eigenoperator(self, tilted_params: ModelParams, k: int):
        h = build_effective(tilted_params)
        a = seed_operator(k, 3, tilted_params.spec)
        assert eigenoperator_residual(h, a, seed_frequency(k, 3, tilted_params)) < 1e-10

    @pytest.mark.parametrize("k", SEED_KINDS)
    def test_charge_is_conserved(self, tilted_params: ModelParams, k: int):
        h = build_effective(tilted_params)
        q = build_charge(k, 2, tilted_params.spec)
        assert h.commutator(q).frobenius_norm() < 1e-10
        assert q.is_hermitian

    def test_frequencies(self, tilted_params: ModelParams):
        assert seed_frequency(1, 3, tilted_params) == pytest.approx(30.0)
        assert seed_frequency(2, 3, tilted_params) == pytest.approx(30.0)
        assert seed_frequency(3, 3, tilted_params) == pytest.approx(31.0)
        assert seed_frequency(4, 3, tilted_params) == pytest.approx(29.0)

    def test_seed_carries_frequency(self, phonon_params: ModelParams):
        seed = build_seed(4, 2, phonon_params)
        assert seed.freq == pytest.approx(19.0)
        assert seed.op.dim == phonon_params.spec.dim

    def test_wrong_frequency_leaves_residual(self, tilted_params: ModelParams):
        h = build_effective(tilted_params)
        a = seed_operator(3, 3, tilted_params.spec)
        assert eigenoperator_residual(h, a, 30.0) == pytest.approx(1.0)

    @pytest.mark.parametrize("eps", [-0.3, -0.1, 0.1, 0.3])
    def test_charge_noise_leaves_a1_a2_frequencies(self, tilted_params: ModelParams, eps: float):
        noisy = tilted_params.replace(J=tilted_params.J + eps)
        h = build_effective(noisy)
        for k in (1, 2):
            a = seed_operator(k, 3, noisy.spec)
            assert eigenoperator_residual(h, a, tilted_params.W * 3) < 1e-10
        for k in (3, 4):
            a = seed_operator(k, 3, noisy.spec)
            assert eigenoperator_residual(h, a, seed_frequency(k, 3, noisy)) < 1e-10
            assert eigenoperator_residual(h, a, seed_frequency(k, 3, tilted_params)) > 0.05

    @pytest.mark.parametrize("j", [1, 5])
    def test_edge_sites_rejected(self, spin_chain: SpaceSpec, j: int):
        with pytest.raises(EdgeSiteError):
            seed_operator(1, j, spin_chain)

    def test_unknown_seed_index(self, spin_chain: SpaceSpec):
        with pytest.raises(ValueError):
            seed_operator(5, 3, spin_chain)

    def test_spin_half_only(self):
        with pytest.raises(ValueError):
            seed_operator(1, 2, SpaceSpec(n_sites=3, spin_levels=3))

    def test_support_is_three_sites(self, spin_chain: SpaceSpec):
        a = seed_operator(1, 3, spin_chain).to_dense().reshape((2,) * 10)
        # identity on site 1
        block_up = a[0, :, :, :, :, 0, :, :, :, :]
        block_down = a[1, :, :, :, :, 1, :, :, :, :]
        assert np.allclose(block_up, block_down)
        assert np.allclose(a[0, :, :, :, :, 1, :, :, :, :], 0)


class TestFilter:
    """Tests for sinc_filter and construct_tau."""

    def test_eigenoperator_passes_unchanged(self, tilted_params: ModelParams):
        eig = dense_eig(build_effective(tilted_params))
        seed = build_seed(2, 3, tilted_params)
        tau = construct_tau(seed, eig, horizon=100.0)
        expected = seed.op / hs_norm(seed.op)
        assert (tau - expected).frobenius_norm() < 1e-10
        assert hs_norm(tau) == pytest.approx(1.0)

    def test_off_resonant_part_is_removed(self, tilted_params: ModelParams):
        eig = dense_eig(build_effective(tilted_params))
        a = seed_operator(2, 3, tilted_params.spec)
        omega = seed_frequency(2, 3, tilted_params)
        filtered = sinc_filter(a + a.dag(), omega, eig, horizon=100.0)
        assert (filtered - a).frobenius_norm() < 1e-3 * a.frobenius_norm()

    def test_unnormalized(self, tilted_params: ModelParams):
        eig = dense_eig(build_effective(tilted_params))
        seed = build_seed(1, 2, tilted_params)
        tau = construct_tau(seed, eig, horizon=50.0, normalize=False)
        assert hs_norm(tau) == pytest.approx(hs_norm(seed.op))

    def test_tau_of_full_hamiltonian_is_normalized(self, phonon_params: ModelParams):
        eig = dense_eig(build_full(phonon_params))
        tau = construct_tau(build_seed(1, 2, phonon_params), eig, horizon=100.0)
        assert hs_norm(tau) == pytest.approx(1.0)

    @pytest.mark.parametrize("k", SEED_KINDS)
    def test_refiltering_tau_is_idempotent(self, tilted_params: ModelParams, k: int):
        eig = dense_eig(build_effective(tilted_params))
        seed = build_seed(k, 3, tilted_params)
        tau = construct_tau(seed, eig, horizon=100.0)
        again = construct_tau(seed.model_copy(update={"op": tau}), eig, horizon=100.0)
        assert (again - tau).frobenius_norm() < 1e-6

    def test_filter_projects_mixed_operator(self, tilted_params: ModelParams):
        eig = dense_eig(build_effective(tilted_params))
        a = seed_operator(2, 3, tilted_params.spec)
        omega = seed_frequency(2, 3, tilted_params)
        horizon = 1e5
        once = sinc_filter(a + a.dag(), omega, eig, horizon)
        twice = sinc_filter(once, omega, eig, horizon)
        # the A_2^dagger part sits at detuning -2 omega, suppressed below 1/(2 omega T)
        assert (once - a).frobenius_norm() < 1e-6 * a.frobenius_norm()
        assert (twice - once).frobenius_norm() < 1e-6 * once.frobenius_norm()

    def test_non_positive_horizon(self, tilted_params: ModelParams):
        eig = dense_eig(build_effective(tilted_params))
        with pytest.raises(ValueError):
            construct_tau(build_seed(1, 2, tilted_params), eig, horizon=0.0)


class TestSpin32Seeds:
    """Seeds of the spin-3/2 pseudo-spin sector."""

    @pytest.fixture
    def spin32(self) -> ModelParams:
        return ModelParams(
            W=10.0, omega0=3.0, lambda_par=1.0, spec=SpaceSpec(n_sites=4, spin_levels=4)
        )

    def test_frequencies(self, spin32: ModelParams):
        g = 1.0 / 3.0
        w1, w2, w3, w4 = spin32_frequencies(spin32, 2)
        assert w1 == pytest.approx(2 * (20.0 - g + 1.0))
        assert w2 == pytest.approx(w1)
        assert w3 == pytest.approx(2 * (20.0 - g + 3.0))
        assert w4 == pytest.approx(2 * (20.0 - g - 1.0))

    @pytest.mark.parametrize("k", SEED_KINDS)
    def test_sector_eigenoperators(self, spin32: ModelParams, k: int):
        sector, _ = build_spin32_sector(spin32)
        for j in (2, 3):
            seed = build_sector_seed(k, j, spin32)
            assert seed.sector
            assert eigenoperator_residual(sector, seed.op, seed.freq) < 1e-10

    def test_rejects_spin_half(self, tilted_params: ModelParams):
        with pytest.raises(ModelSpecError):
            spin32_frequencies(tilted_params, 2)
