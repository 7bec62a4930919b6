"""Open-system dynamics: Lindblad superoperator, time evolution, steady state.

The master equation keeps the explicit factor-2 rate convention

    drho/dt = -i [H, rho] + gamma (2 s- rho s+ - s+ s- rho - rho s+ s-)
              + kappa (2 a rho a^+ - a^+ a rho - rho a^+ a)
              + gamma_phi (sigma_z rho sigma_z - rho),

so the photon number of an undriven cavity decays as exp(-2 kappa t) and
an excited atom as exp(-2 gamma t).

Vectorization is column-stacking: vec(A rho B) = (B^T (x) A) vec(rho).

Time integration is fixed-step classical Runge-Kutta on vec(rho), with the
drive envelope sampled at substep times and the step h tied to the operator
norms (h * max(|H|, rates) <= 0.05).  Every run is repeated at half step and
accepted only when the two trajectories agree entrywise below ``halving_tol``;
the finer result is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .algebra import (
    DensityMatrix,
    HilbertDims,
    Operator,
    annihilation,
    atomic_operators,
    fock_probabilities,
    ground_state,
    number_operator,
)
from .errors import CutoffEscalationError, IntegrationError, SteadyStateError
from .model import ModelParams, PulseEnvelope, ConstantPulse, drive_structure, envelope_peak, envelope_value, hamiltonian_interaction

STEP_FACTOR = 0.05
HALVING_TOL = 1e-6
MAX_HALVINGS = 3
TAIL_LIMIT = 1e-6
CUTOFF_STEP = 4
CUTOFF_CAP = 40
TRACE_ABORT = 1e-3


@dataclass(frozen=True, eq=False)
class Liouvillian:
    """Superoperator acting on column-stacked vec(rho)."""

    dims: HilbertDims
    superoperator: sp.csr_matrix

    def __post_init__(self):
        n2 = self.dims.total**2
        if self.superoperator.shape != (n2, n2):
            raise ValueError(f"superoperator shape {self.superoperator.shape} != ({n2}, {n2})")


def vectorize(mat: np.ndarray) -> np.ndarray:
    """Column-stacking vec()."""
    return np.asarray(mat, dtype=complex).reshape(-1, order="F")


def unvectorize(vec: np.ndarray, total_dim: int) -> np.ndarray:
    return np.asarray(vec, dtype=complex).reshape((total_dim, total_dim), order="F")


def _commutator_superop(h: Operator) -> sp.csr_matrix:
    n = h.dims.total
    eye = sp.identity(n, dtype=complex, format="csr")
    hd = h.data
    return (-1j) * (sp.kron(eye, hd, format="csr") - sp.kron(hd.T, eye, format="csr"))


def _dissipator_parts(params: ModelParams, dims: HilbertDims) -> sp.csr_matrix:
    n = dims.total
    eye = sp.identity(n, dtype=complex, format="csr")
    out = sp.csr_matrix((n * n, n * n), dtype=complex)
    sigma_minus, sigma_plus, sigma_z = atomic_operators(dims)

    def damping(c: sp.csr_matrix, rate: float) -> sp.csr_matrix:
        cdc = (c.conj().T @ c).tocsr()
        return rate * (
            2.0 * sp.kron(c.conj(), c, format="csr")
            - sp.kron(eye, cdc, format="csr")
            - sp.kron(cdc.T, eye, format="csr")
        )

    if params.kappa != 0.0:
        out = out + damping(annihilation(dims).data, params.kappa)
    if params.gamma != 0.0:
        out = out + damping(sigma_minus.data, params.gamma)
    if params.gamma_phi != 0.0:
        sz = sigma_z.data
        out = out + params.gamma_phi * (
            sp.kron(sz.T, sz, format="csr") - sp.identity(n * n, dtype=complex, format="csr")
        )
    return sp.csr_matrix(out)


def _superop_parts(params: ModelParams, dims: HilbertDims) -> tuple[sp.csr_matrix, sp.csr_matrix, sp.csr_matrix]:
    """(static part incl. dissipators, unit-drive part, dissipator-only part)."""
    l_static = _commutator_superop(hamiltonian_interaction(params, dims, 0.0))
    l_diss = _dissipator_parts(params, dims)
    l_drive = _commutator_superop(drive_structure(params, dims))
    return sp.csr_matrix(l_static + l_diss), sp.csr_matrix(l_drive), l_diss


def build_liouvillian(params: ModelParams, dims: HilbertDims, eps: float) -> Liouvillian:
    """Superoperator of the full master equation at fixed drive strength eps."""
    l_static, l_drive, _ = _superop_parts(params, dims)
    return Liouvillian(dims, sp.csr_matrix(l_static + eps * l_drive))


@dataclass(eq=False)
class TrajectoryResult:
    """Density matrices and named observables on a time grid.

    observables carries "fock_probabilities" (len(times) x d) and "n_mean";
    the diagnostics record the accepted substep, the worst truncation-tail
    population P_{d-1} + P_{d-2}, and the raw Hermiticity / trace drifts of
    the integrator (states are stored re-symmetrized).
    """

    times: np.ndarray
    states: list[DensityMatrix]
    observables: dict[str, np.ndarray]
    step: float
    tail_max: float
    herm_drift_max: float
    trace_drift_max: float

    @property
    def dims(self) -> HilbertDims:
        return self.states[0].dims


def _sparse_inf_norm(mat: sp.csr_matrix) -> float:
    if mat.nnz == 0:
        return 0.0
    return float(np.max(np.abs(mat).sum(axis=1)))


def _integrate_fixed_step(
    l_static: sp.csr_matrix,
    l_drive: sp.csr_matrix,
    pulse: PulseEnvelope,
    v0: np.ndarray,
    t_grid: np.ndarray,
    h: float,
) -> np.ndarray:
    """RK4 on vec(rho); returns states at the grid points."""
    constant = isinstance(pulse, ConstantPulse)
    if constant:
        l_total = sp.csr_matrix(l_static + pulse.eps0 * l_drive)

        def rhs(v, _t):
            return l_total @ v

    else:

        def rhs(v, t):
            return l_static @ v + envelope_value(pulse, t) * (l_drive @ v)

    out = np.empty((len(t_grid), v0.size), dtype=complex)
    out[0] = v0
    v = v0.copy()
    for i in range(len(t_grid) - 1):
        t0, t1 = t_grid[i], t_grid[i + 1]
        span = t1 - t0
        nsub = max(1, int(math.ceil(span / h - 1e-12)))
        hh = span / nsub
        for k in range(nsub):
            t = t0 + k * hh
            k1 = rhs(v, t)
            k2 = rhs(v + (0.5 * hh) * k1, t + 0.5 * hh)
            k3 = rhs(v + (0.5 * hh) * k2, t + 0.5 * hh)
            k4 = rhs(v + hh * k3, t + hh)
            v = v + (hh / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(v)):
            raise IntegrationError(f"non-finite state at t = {t1:g}; integration blew up")
        out[i + 1] = v
    return out


def evolve(
    params: ModelParams,
    dims: HilbertDims,
    pulse: PulseEnvelope,
    rho0: DensityMatrix,
    t_grid: np.ndarray,
    *,
    step_factor: float = STEP_FACTOR,
    halving_tol: float = HALVING_TOL,
    max_halvings: int = MAX_HALVINGS,
) -> TrajectoryResult:
    """Integrate the master equation over t_grid (monotone, starting at 0)."""
    if rho0.dims != dims:
        raise ValueError("initial state dimensions do not match")
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) < 2:
        raise ValueError("time grid must be a 1-d array with at least two points")
    if t_grid[0] != 0.0:
        raise ValueError("time grid must start at 0")
    if np.any(np.diff(t_grid) <= 0):
        raise ValueError("time grid must be strictly increasing")

    l_static, l_drive, l_diss = _superop_parts(params, dims)
    h_peak = hamiltonian_interaction(params, dims, envelope_peak(pulse))
    scale = max(h_peak.norm_inf(), _sparse_inf_norm(l_diss))
    min_span = float(np.min(np.diff(t_grid)))
    h = min_span if scale == 0.0 else min(step_factor / scale, min_span)

    v0 = vectorize(rho0.data)
    coarse = _integrate_fixed_step(l_static, l_drive, pulse, v0, t_grid, h)
    accepted = None
    for _ in range(max_halvings):
        h = h / 2.0
        fine = _integrate_fixed_step(l_static, l_drive, pulse, v0, t_grid, h)
        if float(np.max(np.abs(fine - coarse))) < halving_tol:
            accepted = fine
            break
        coarse = fine
    if accepted is None:
        raise IntegrationError(
            f"step-halving did not converge below {halving_tol:g} after {max_halvings} refinements"
        )

    n = dims.total
    d = dims.fock_cutoff
    diag_idx = np.arange(n) * (n + 1)
    states: list[DensityMatrix] = []
    herm_drift = 0.0
    trace_drift = 0.0
    tail_max = 0.0
    probs = np.empty((len(t_grid), d))
    for i, vec_state in enumerate(accepted):
        tr = vec_state[diag_idx].sum()
        trace_drift = max(trace_drift, abs(tr - 1.0))
        if abs(tr - 1.0) > TRACE_ABORT:
            raise IntegrationError(f"trace drift {abs(tr - 1.0):.3e} at t = {t_grid[i]:g}")
        mat = unvectorize(vec_state, n)
        herm_drift = max(herm_drift, float(np.max(np.abs(mat - mat.conj().T))))
        rho = DensityMatrix(dims, 0.5 * (mat + mat.conj().T))
        states.append(rho)
        probs[i] = fock_probabilities(rho)
        tail_max = max(tail_max, probs[i, d - 1] + probs[i, d - 2])

    n_op = number_operator(dims).data
    n_mean = np.array([float(np.real(n_op.multiply(r.data.T).sum())) for r in states])
    observables = {"fock_probabilities": probs, "n_mean": n_mean}
    return TrajectoryResult(
        times=t_grid,
        states=states,
        observables=observables,
        step=h,
        tail_max=tail_max,
        herm_drift_max=herm_drift,
        trace_drift_max=trace_drift,
    )


def steady_state(params: ModelParams, dims: HilbertDims, eps0: float, *, residual_tol: float = 1e-10) -> DensityMatrix:
    """Null-space steady state of the master equation under constant drive.

    One row of the superoperator (the vec index of rho_00) is replaced by
    the trace constraint; kappa > 0 guarantees uniqueness on the truncated
    space.  The residual |L vec(rho)|_inf of the returned state must come
    out below ``residual_tol``, otherwise the null space is flagged as
    degenerate.
    """
    if params.kappa <= 0:
        raise ValueError("steady state requires kappa > 0")
    if eps0 < 0:
        raise ValueError("drive strength must be >= 0")
    liou = build_liouvillian(params, dims, eps0).superoperator
    n = dims.total
    diag_idx = np.arange(n) * (n + 1)

    a = liou.tolil(copy=True)
    a[0, :] = 0.0
    for j in diag_idx:
        a[0, j] = 1.0
    b = np.zeros(n * n, dtype=complex)
    b[0] = 1.0
    try:
        x = spla.spsolve(sp.csc_matrix(a), b)
    except Exception as exc:  # pragma: no cover - solver backend failure
        raise SteadyStateError(f"sparse solve failed: {exc}") from exc
    if not np.all(np.isfinite(x)):
        raise SteadyStateError("sparse solve returned non-finite entries")

    mat = unvectorize(x, n)
    mat = 0.5 * (mat + mat.conj().T)
    tr = mat.trace().real
    if abs(tr) < 1e-12:
        raise SteadyStateError("steady-state candidate has vanishing trace")
    mat = mat / tr
    residual = float(np.max(np.abs(liou @ vectorize(mat))))
    if residual > residual_tol:
        raise SteadyStateError(
            f"steady-state residual {residual:.3e} exceeds {residual_tol:g}; degenerate null space?"
        )
    return DensityMatrix(dims, mat)


def _tail(rho: DensityMatrix) -> float:
    probs = fock_probabilities(rho)
    return float(probs[-1] + probs[-2])


def evolve_ground_auto(
    params: ModelParams,
    pulse: PulseEnvelope,
    t_grid: np.ndarray,
    *,
    fock_cutoff: int,
    cutoff_cap: int = CUTOFF_CAP,
    tail_limit: float = TAIL_LIMIT,
    **evolve_kwargs,
) -> TrajectoryResult:
    """evolve() from |g, 0> with the Fock-truncation rule applied.

    A run is accepted only if P_{d-1} + P_{d-2} stays below ``tail_limit`` at
    every grid point; otherwise it is repeated with d increased by 4, up to
    ``cutoff_cap``.
    """
    d = fock_cutoff
    while True:
        dims = HilbertDims(d)
        traj = evolve(params, dims, pulse, ground_state(dims), t_grid, **evolve_kwargs)
        if traj.tail_max < tail_limit:
            return traj
        if d + CUTOFF_STEP > cutoff_cap:
            raise CutoffEscalationError(
                f"tail population {traj.tail_max:.3e} still above {tail_limit:g} at cutoff {d} (cap {cutoff_cap})"
            )
        d += CUTOFF_STEP


def steady_state_auto(
    params: ModelParams,
    eps0: float,
    *,
    fock_cutoff: int,
    cutoff_cap: int = CUTOFF_CAP,
    tail_limit: float = TAIL_LIMIT,
) -> tuple[DensityMatrix, int]:
    """steady_state() with the same truncation rule; returns (state, cutoff used)."""
    d = fock_cutoff
    while True:
        rho = steady_state(params, HilbertDims(d), eps0)
        if _tail(rho) < tail_limit:
            return rho, d
        if d + CUTOFF_STEP > cutoff_cap:
            raise CutoffEscalationError(
                f"steady-state tail {_tail(rho):.3e} still above {tail_limit:g} at cutoff {d} (cap {cutoff_cap})"
            )
        d += CUTOFF_STEP


def params_at(params: ModelParams, **changes) -> ModelParams:
    """Convenience wrapper around dataclasses.replace for sweeps."""
    return replace(params, **changes)
