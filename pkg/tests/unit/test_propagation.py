"""Unit tests for exact and Krylov propagation."""

import numpy as np
import pytest
import scipy.linalg as la

from stark_lbits.hamiltonians import build_effective, build_full, build_system
from stark_lbits.hilbert import OperatorSpecError, spin_op
from stark_lbits.lbits import seed_frequency, seed_operator
from stark_lbits.propagation import (
    DenseCeilingError,
    KrylovConvergenceError,
    KrylovParams,
    NonHermitianError,
    dense_eig,
    evolve_along_grid,
    evolve_state,
    heisenberg_op,
)
from stark_lbits.schemas.model import ModelParams, SpaceSpec


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(7)


@pytest.fixture
def psi0(rng: np.random.Generator) -> np.ndarray:
    psi = rng.standard_normal(32) + 1j * rng.standard_normal(32)
    return psi / np.linalg.norm(psi)


class TestDense:
    """Tests for dense_eig and the eigenbasis helpers."""

    def test_reconstruction(self, tilted_params: ModelParams):
        h = build_system(tilted_params)
        eig = dense_eig(h)
        assert np.allclose(eig.reconstruct(), h.to_dense())
        assert np.all(np.diff(eig.energies) >= 0)

    def test_unitary_matches_expm(self, tilted_params: ModelParams):
        h = build_system(tilted_params)
        eig = dense_eig(h)
        assert np.allclose(eig.unitary(0.7), la.expm(-0.7j * h.to_dense()))

    def test_propagate_matches_unitary(self, tilted_params: ModelParams, psi0: np.ndarray):
        eig = dense_eig(build_system(tilted_params))
        assert np.allclose(eig.propagate(psi0, 1.3), eig.unitary(1.3) @ psi0)

    def test_rejects_non_hermitian(self, tilted_params: ModelParams):
        with pytest.raises(NonHermitianError):
            dense_eig(spin_op("Sp", 1, tilted_params.spec))

    def test_ceiling(self, tilted_params: ModelParams):
        with pytest.raises(DenseCeilingError):
            dense_eig(build_system(tilted_params), ceiling=16)

    def test_heisenberg_eigenoperator_picks_up_phase(self, tilted_params: ModelParams):
        h = build_effective(tilted_params)
        eig = dense_eig(h)
        a = seed_operator(2, 3, tilted_params.spec)
        omega = seed_frequency(2, 3, tilted_params)
        evolved = heisenberg_op(a, eig, 0.4)
        expected = np.exp(1j * omega * 0.4) * a.to_dense()
        assert np.allclose(evolved.to_dense(), expected, atol=1e-10)

    def test_heisenberg_conserved_quantity(self, phonon_params: ModelParams):
        eig = dense_eig(build_full(phonon_params))
        h = build_full(phonon_params)
        evolved = heisenberg_op(h, eig, 2.0)
        assert np.allclose(evolved.to_dense(), h.to_dense(), atol=1e-9)


class TestKrylov:
    """Tests for the Lanczos propagator."""

    def test_matches_exact(self, tilted_params: ModelParams, psi0: np.ndarray):
        h = build_system(tilted_params)
        exact = dense_eig(h).propagate(psi0, 1.3)
        krylov = evolve_state(h, psi0, 1.3, KrylovParams(subspace_dim=12, dt=0.05, tolerance=1e-11))
        assert np.linalg.norm(krylov - exact) < 1e-8

    def test_preserves_norm(self, tilted_params: ModelParams, psi0: np.ndarray):
        h = build_system(tilted_params)
        out = evolve_state(h, psi0, 2.0)
        assert np.linalg.norm(out) == pytest.approx(1.0, abs=1e-8)

    def test_backward_step_undoes_forward(self, tilted_params: ModelParams, psi0: np.ndarray):
        h = build_system(tilted_params)
        forward = evolve_state(h, psi0, 0.8)
        back = evolve_state(h, forward, -0.8)
        assert np.linalg.norm(back - psi0) < 1e-7

    def test_zero_time_returns_copy(self, tilted_params: ModelParams, psi0: np.ndarray):
        out = evolve_state(build_system(tilted_params), psi0, 0.0)
        assert np.array_equal(out, psi0)
        assert out is not psi0

    def test_grid(self, tilted_params: ModelParams, psi0: np.ndarray):
        h = build_system(tilted_params)
        times = np.array([0.0, 0.5, 1.0])
        states = evolve_along_grid(h, psi0, times)
        eig = dense_eig(h)
        assert states.shape == (3, 32)
        for t, state in zip(times, states):
            assert np.linalg.norm(state - eig.propagate(psi0, t)) < 1e-7

    def test_step_budget(self, tilted_params: ModelParams, psi0: np.ndarray):
        kp = KrylovParams(subspace_dim=4, dt=0.01, max_substeps=1)
        with pytest.raises(KrylovConvergenceError):
            evolve_state(build_system(tilted_params), psi0, 1.0, kp)

    def test_shape_mismatch(self, tilted_params: ModelParams):
        with pytest.raises(OperatorSpecError):
            evolve_state(build_system(tilted_params), np.ones(5), 1.0)


class TestKrylovWithPhonons:
    """Krylov against dense propagation on N=5, N_B=2 (dim 1024) out to t=10."""

    @pytest.fixture(scope="class")
    def hamiltonian(self):
        params = ModelParams(
            J=1.0,
            W=10.0,
            omega0=3.0,
            lambda_perp=1.0,
            lambda_par=1.0,
            spec=SpaceSpec(n_sites=5, boson_levels=2),
        )
        return build_full(params)

    @pytest.fixture
    def state(self, hamiltonian) -> np.ndarray:
        rng = np.random.default_rng(11)
        psi = rng.standard_normal(hamiltonian.dim) + 1j * rng.standard_normal(hamiltonian.dim)
        return psi / np.linalg.norm(psi)

    @pytest.fixture
    def kp(self) -> KrylovParams:
        return KrylovParams(subspace_dim=30, dt=0.02, tolerance=1e-13)

    def test_matches_dense(self, hamiltonian, state: np.ndarray, kp: KrylovParams):
        assert hamiltonian.dim == 1024
        exact = dense_eig(hamiltonian).propagate(state, 10.0)
        krylov = evolve_state(hamiltonian, state, 10.0, kp)
        assert np.linalg.norm(krylov - exact) < 1e-8

    def test_group_property(self, hamiltonian, state: np.ndarray, kp: KrylovParams):
        split = evolve_state(hamiltonian, evolve_state(hamiltonian, state, 6.3, kp), 3.7, kp)
        whole = evolve_state(hamiltonian, state, 10.0, kp)
        assert np.linalg.norm(split - whole) < 1e-8

    def test_conserves_energy_and_norm(self, hamiltonian, state: np.ndarray, kp: KrylovParams):
        energy = np.vdot(state, hamiltonian.apply(state)).real
        evolved = evolve_state(hamiltonian, state, 10.0, kp)
        assert np.vdot(evolved, hamiltonian.apply(evolved)).real == pytest.approx(energy, abs=1e-8)
        assert np.linalg.norm(evolved) == pytest.approx(1.0, abs=1e-10)
