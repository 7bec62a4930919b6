import math

import numpy as np
import pytest
import scipy.linalg as sla

from njcsim import (
    ConstantPulse,
    CutoffEscalationError,
    DensityMatrix,
    GaussianPulse,
    HilbertDims,
    IntegrationError,
    ModelParams,
    basis_state,
    build_liouvillian,
    evolve,
    evolve_ground_auto,
    fock_probabilities,
    ground_state,
    pure_state,
    steady_state,
    steady_state_auto,
    unvectorize,
    vectorize,
)


def random_density(rng, total_dim):
    v = rng.normal(size=(total_dim, total_dim)) + 1j * rng.normal(size=(total_dim, total_dim))
    rho = v @ v.conj().T
    return rho / rho.trace()


def random_hermitian(rng, total_dim):
    v = rng.normal(size=(total_dim, total_dim)) + 1j * rng.normal(size=(total_dim, total_dim))
    return v + v.conj().T


class TestLiouvillian:
    def test_vectorization_convention(self):
        # column stacking: vec(A rho B) = (B^T (x) A) vec(rho)
        rng = np.random.default_rng(5)
        a, rho, b = (rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)) for _ in range(3))
        lhs = vectorize(a @ rho @ b)
        rhs = np.kron(b.T, a) @ vectorize(rho)
        assert np.allclose(lhs, rhs)
        assert np.allclose(unvectorize(lhs, 4), a @ rho @ b)

    def test_trace_preservation_random(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            d = int(rng.integers(3, 7))
            dims = HilbertDims(d)
            params = ModelParams(
                N=int(rng.integers(1, min(4, d))),
                M=int(rng.integers(1, d)),
                g=float(rng.uniform(0, 50)),
                delta_p=float(rng.uniform(-2, 2)),
                chi=float(rng.uniform(0, 2 * math.pi)),
                kappa=float(rng.uniform(0.1, 2)),
                gamma=float(rng.uniform(0, 1)),
                gamma_phi=float(rng.uniform(0, 1)),
            )
            liou = build_liouvillian(params, dims, float(rng.uniform(0, 5))).superoperator
            rho = random_hermitian(rng, dims.total)
            out = unvectorize(liou @ vectorize(rho), dims.total)
            assert abs(out.trace()) < 1e-10

    def test_hermiticity_preservation(self):
        rng = np.random.default_rng(13)
        dims = HilbertDims(4)
        params = ModelParams(N=2, M=1, g=3.0, delta_p=0.5, chi=1.1, kappa=1.0, gamma=0.4, gamma_phi=0.3)
        liou = build_liouvillian(params, dims, 1.5).superoperator
        rho = random_density(rng, dims.total)
        out = unvectorize(liou @ vectorize(rho), dims.total)
        out_dag = unvectorize(liou @ vectorize(rho.conj().T), dims.total)
        assert np.max(np.abs(out_dag - out.conj().T)) < 1e-12


class TestDecayConventions:
    def test_photon_number_decays_at_twice_kappa(self):
        dims = HilbertDims(4)
        params = ModelParams(N=2, M=1, g=0.0, kappa=1.0)
        rho0 = pure_state(dims, basis_state(dims, 0, 1))
        t = np.linspace(0.0, 1.5, 7)
        traj = evolve(params, dims, ConstantPulse(0.0), rho0, t)
        assert np.allclose(traj.observables["n_mean"], np.exp(-2.0 * t), atol=1e-8)

    def test_atom_decays_at_twice_gamma(self):
        dims = HilbertDims(3)
        params = ModelParams(N=2, M=1, g=0.0, kappa=0.0, gamma=0.7)
        rho0 = pure_state(dims, basis_state(dims, 1, 0))
        t = np.linspace(0.0, 1.0, 6)
        traj = evolve(params, dims, ConstantPulse(0.0), rho0, t)
        p_excited = np.array([np.real(r.data[dims.index(1, 0), dims.index(1, 0)]) for r in traj.states])
        assert np.allclose(p_excited, np.exp(-2.0 * 0.7 * t), atol=1e-8)

    def test_pure_dephasing_kills_coherence_only(self):
        # two-level dephasing channel: rho_ge(t) = rho_ge(0) exp(-2 gamma_phi t)
        dims = HilbertDims(2)
        params = ModelParams(N=1, M=1, g=0.0, kappa=0.0, gamma_phi=0.9)
        psi = (basis_state(dims, 0, 0) + basis_state(dims, 1, 0)) / math.sqrt(2)
        rho0 = pure_state(dims, psi)
        t = np.linspace(0.0, 1.0, 6)
        traj = evolve(params, dims, ConstantPulse(0.0), rho0, t)
        i, j = dims.index(0, 0), dims.index(1, 0)
        coherence = np.array([abs(r.data[i, j]) for r in traj.states])
        populations = np.array([np.real(r.data[i, i]) for r in traj.states])
        assert np.allclose(coherence, 0.5 * np.exp(-2.0 * 0.9 * t), atol=1e-8)
        assert np.allclose(populations, 0.5, atol=1e-9)


class TestEvolve:
    def test_ground_state_is_dark_without_drive(self):
        dims = HilbertDims(5)
        params = ModelParams(N=2, M=1, g=40.0, kappa=1.0, gamma=0.5, gamma_phi=0.5)
        t = np.linspace(0.0, 2.0, 5)
        traj = evolve(params, dims, ConstantPulse(0.0), ground_state(dims), t)
        for rho in traj.states:
            assert np.max(np.abs(rho.data - ground_state(dims).data)) < 1e-10

    def test_matches_dense_matrix_exponential(self):
        rng = np.random.default_rng(21)
        for _ in range(5):
            d = int(rng.integers(3, 5))
            dims = HilbertDims(d)
            params = ModelParams(
                N=int(rng.integers(1, d)),
                M=int(rng.integers(1, d)),
                g=float(rng.uniform(0, 2)),
                delta_p=float(rng.uniform(-1, 1)),
                chi=float(rng.uniform(0, 2 * math.pi)),
                kappa=float(rng.uniform(0.1, 1.0)),
                gamma=float(rng.uniform(0, 1)),
                gamma_phi=float(rng.uniform(0, 1)),
            )
            eps = float(rng.uniform(0, 2))
            rho0_mat = random_density(rng, dims.total)
            rho0 = DensityMatrix(dims, rho0_mat)
            t_grid = np.array([0.0, 0.5, 1.0])
            traj = evolve(params, dims, ConstantPulse(eps), rho0, t_grid)
            liou = build_liouvillian(params, dims, eps).superoperator.toarray()
            propagated = unvectorize(sla.expm(liou * 1.0) @ vectorize(rho0_mat), dims.total)
            assert np.max(np.abs(traj.states[-1].data - propagated)) < 1e-6

    def test_trajectory_diagnostics_and_positivity(self):
        dims = HilbertDims(6)
        params = ModelParams(N=2, M=1, g=5.0, kappa=1.0, gamma=0.5, gamma_phi=0.5)
        t = np.linspace(0.0, 3.0, 16)
        traj = evolve(params, dims, ConstantPulse(1.0), ground_state(dims), t)
        assert traj.trace_drift_max < 1e-7
        assert traj.herm_drift_max < 1e-9
        assert all(r.min_eigenvalue() > -1e-7 for r in traj.states)
        probs = traj.observables["fock_probabilities"]
        assert np.allclose(probs.sum(axis=1), 1.0, atol=1e-7)

    def test_grid_validation(self):
        dims = HilbertDims(4)
        params = ModelParams(N=2, M=1, g=1.0)
        rho0 = ground_state(dims)
        with pytest.raises(ValueError):
            evolve(params, dims, ConstantPulse(0.0), rho0, np.array([0.5, 1.0]))
        with pytest.raises(ValueError):
            evolve(params, dims, ConstantPulse(0.0), rho0, np.array([0.0, 1.0, 1.0]))
        with pytest.raises(ValueError):
            evolve(params, dims, ConstantPulse(0.0), rho0, np.array([0.0]))

    def test_unstable_step_raises(self):
        dims = HilbertDims(5)
        params = ModelParams(N=2, M=1, g=50.0, kappa=1.0)
        with pytest.raises(IntegrationError):
            evolve(
                params,
                dims,
                ConstantPulse(1.0),
                ground_state(dims),
                np.linspace(0.0, 5.0, 3),
                step_factor=1e3,
                max_halvings=1,
            )

    def test_gaussian_pulse_populates_and_empties_cavity(self):
        dims = HilbertDims(8)
        params = ModelParams(N=2, M=1, g=0.0, kappa=1.0, gamma=0.5, gamma_phi=0.5)
        pulse = GaussianPulse(eps_max=1.0, duration=1.0, t_center=6.0)
        t = np.linspace(0.0, 12.0, 49)
        traj = evolve(params, dims, pulse, ground_state(dims), t)
        n = traj.observables["n_mean"]
        assert n[0] == pytest.approx(0.0, abs=1e-12)
        assert n.max() > 0.01
        assert n[-1] < 0.1 * n.max()


class TestSteadyState:
    def test_undriven_steady_state_is_ground(self):
        dims = HilbertDims(5)
        params = ModelParams(N=2, M=1, g=7.0, kappa=1.0, gamma=0.5, gamma_phi=0.5)
        rho = steady_state(params, dims, 0.0)
        assert np.max(np.abs(rho.data - ground_state(dims).data)) < 1e-10

    def test_requires_positive_kappa(self):
        params = ModelParams(N=2, M=1, g=1.0, kappa=0.0)
        with pytest.raises(ValueError):
            steady_state(params, HilbertDims(4), 1.0)

    def test_long_time_evolution_converges_to_steady_state(self):
        dims = HilbertDims(8)
        params = ModelParams(N=2, M=1, g=20.0, kappa=1.0, gamma=0.5, gamma_phi=0.5)
        rho_ss = steady_state(params, dims, 2.0)
        t = np.linspace(0.0, 20.0, 21)
        traj = evolve(params, dims, ConstantPulse(2.0), ground_state(dims), t)
        diff = traj.states[-1].data - rho_ss.data
        trace_distance = 0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff)))
        assert trace_distance < 1e-6

    def test_nontrivial_blockaded_state(self):
        dims = HilbertDims(8)
        params = ModelParams(N=2, M=1, g=20.0, kappa=1.0, gamma=0.5, gamma_phi=0.5)
        rho = steady_state(params, dims, 2.0)
        probs = fock_probabilities(rho)
        assert probs[2:].sum() < 0.05  # blockade keeps leakage past |1> small
        assert probs[1] > 0.1
        assert rho.min_eigenvalue() > -1e-12


class TestCutoffEscalation:
    def test_steady_state_auto_escalates(self):
        # a linearly driven empty cavity with n_mean = 4 needs d well above 6
        params = ModelParams(N=2, M=1, g=0.0, kappa=1.0, gamma=0.5, gamma_phi=0.5)
        rho, used = steady_state_auto(params, 2.0, fock_cutoff=6)
        assert used > 6
        probs = fock_probabilities(rho)
        assert probs[-1] + probs[-2] < 1e-6
        n_mean = float(np.sum(probs * np.arange(used)))
        assert n_mean == pytest.approx(4.0, rel=1e-3)

    def test_steady_state_auto_cap(self):
        params = ModelParams(N=2, M=1, g=0.0, kappa=1.0)
        with pytest.raises(CutoffEscalationError):
            steady_state_auto(params, 2.0, fock_cutoff=6, cutoff_cap=10)

    def test_evolve_auto_keeps_small_cutoff_when_adequate(self):
        params = ModelParams(N=2, M=1, g=0.0, kappa=1.0)
        t = np.linspace(0.0, 1.0, 5)
        traj = evolve_ground_auto(params, ConstantPulse(0.1), t, fock_cutoff=8)
        assert traj.dims.fock_cutoff == 8
        assert traj.tail_max < 1e-6

    def test_evolve_auto_escalates_under_strong_drive(self):
        params = ModelParams(N=2, M=1, g=0.0, kappa=1.0)
        t = np.linspace(0.0, 1.0, 5)
        traj = evolve_ground_auto(params, ConstantPulse(2.0), t, fock_cutoff=6)
        assert traj.dims.fock_cutoff > 6
        assert traj.tail_max < 1e-6
