"""Protocol-level analytics built on the model and the Lindblad engine.

Covers the effective ground-block Hamiltonian of the strong-coupling
weak-drive limit, the closed-form vacuum <-> M-Fock rotation it generates,
Fock-filter leakage metrics, the normalized absorption scan of the
weak-coupling regime, and the input-output mapping to transmitted-field
moments.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
import scipy.sparse as sp

from .algebra import (
    DensityMatrix,
    HilbertDims,
    Operator,
    annihilation,
    expectation,
    fock_probabilities,
    number_operator,
)
from .lindblad import CUTOFF_CAP, TAIL_LIMIT, TrajectoryResult, steady_state_auto
from .model import ModelParams, PulseEnvelope, envelope_integral, envelope_peak


@dataclass(frozen=True)
class RotationSpec:
    """Nonlinearities, drive and phase defining a vacuum <-> |M> rotation.

    Requires M < N (drive softer than the atom-field nonlinearity).  The
    closed-form two-level rotation additionally needs N/2 <= M, enforced by
    rotation_state.
    """

    N: int
    M: int
    pulse: PulseEnvelope
    chi: float = 0.0

    def __post_init__(self):
        if self.M >= self.N:
            raise ValueError("rotation requires drive nonlinearity M < N")
        if self.M < 1:
            raise ValueError("drive nonlinearity M must be >= 1")

    def validity_ratio(self, g: float) -> float:
        """eps_max / (g sqrt(2 (N-M)!)); the effective model needs this << 1."""
        if g <= 0:
            return math.inf
        return envelope_peak(self.pulse) / (g * math.sqrt(2.0 * math.factorial(self.N - self.M)))


def effective_hamiltonian(params: ModelParams, dims: HilbertDims, eps: float = 1.0) -> Operator:
    """Ground-block Hamiltonian of the strong-coupling weak-drive limit.

    Couples |g, n> -> |g, n+M> with amplitude eps sqrt((n+M)!/n!) e^{i chi}
    for 0 <= n <= N-M-1; every matrix element involving the excited atom is
    zero.  Only valid for M < N and a drive resonant with the cavity
    (delta_p = 0).
    """
    if params.M >= params.N:
        raise ValueError("effective Hamiltonian requires M < N")
    if params.delta_p != 0.0:
        raise ValueError("effective Hamiltonian requires a resonant drive (delta_p = 0)")
    if dims.fock_cutoff <= params.N - 1:
        raise ValueError("Fock cutoff too small for the scissor subspace")
    rows, cols, vals = [], [], []
    phase = np.exp(1j * params.chi)
    for n in range(params.N - params.M):
        amp = eps * math.sqrt(math.factorial(n + params.M) / math.factorial(n)) * phase
        rows.append(dims.index(0, n + params.M))
        cols.append(dims.index(0, n))
        vals.append(amp)
        rows.append(dims.index(0, n))
        cols.append(dims.index(0, n + params.M))
        vals.append(np.conj(amp))
    data = sp.csr_matrix(
        (np.array(vals, dtype=complex), (np.array(rows), np.array(cols))),
        shape=(dims.total, dims.total),
    )
    return Operator(dims, data)


def rotation_angle(spec: RotationSpec, t: float) -> float:
    """Polar angle theta_M(t) = 2 sqrt(M!) integral_0^t eps."""
    return 2.0 * math.sqrt(math.factorial(spec.M)) * envelope_integral(spec.pulse, t)


def rotation_state(spec: RotationSpec, t: float, fock_cutoff: int | None = None) -> np.ndarray:
    """Closed-form cavity state of the rotation (atom stays in |g>).

    Returns cos(theta/2) |0> + e^{i phi} sin(theta/2) |M> with the fixed
    phase convention phi = chi - pi/2.  Only a pure two-level rotation when
    N/2 <= M < N; refused otherwise.
    """
    if not (spec.N / 2.0 <= spec.M < spec.N):
        raise ValueError("closed-form rotation requires N/2 <= M < N")
    d = spec.M + 1 if fock_cutoff is None else fock_cutoff
    if d < spec.M + 1:
        raise ValueError("cutoff too small to hold the M-Fock state")
    theta = rotation_angle(spec, t)
    phi = spec.chi - math.pi / 2.0
    vec = np.zeros(d, dtype=complex)
    vec[0] = math.cos(theta / 2.0)
    vec[spec.M] = np.exp(1j * phi) * math.sin(theta / 2.0)
    return vec


def embed_rotation_state(spec: RotationSpec, t: float, dims: HilbertDims) -> np.ndarray:
    """rotation_state embedded in the full atom (x) cavity space."""
    vec = np.zeros(dims.total, dtype=complex)
    vec[: dims.fock_cutoff] = rotation_state(spec, t, dims.fock_cutoff)
    return vec


def rotation_fidelity(full: TrajectoryResult, spec: RotationSpec) -> np.ndarray:
    """<Psi(t)| rho(t) |Psi(t)> of a full trajectory against the closed form."""
    dims = full.dims
    out = np.empty(len(full.times))
    for i, (t, rho) in enumerate(zip(full.times, full.states)):
        psi = embed_rotation_state(spec, float(t), dims)
        out[i] = float(np.real(psi.conj() @ rho.data @ psi))
    return out


def filter_leakage(rho: DensityMatrix, n_jc: int) -> float:
    """Probability weight outside the scissor subspace {|0>, ..., |N-1>}."""
    probs = fock_probabilities(rho)
    return float(np.sum(probs[n_jc:]))


@dataclass(eq=False)
class SpectrumScan:
    """Steady-state absorption versus probe detuning.

    absorption is the intracavity photon number divided by the reference
    n_max_reference obtained with g = delta_p = 0; n_mean keeps the raw
    values.  cutoff_used records the largest Fock cutoff the truncation
    rule selected across the grid.  states is optional (kept for invariant
    checks when requested).
    """

    delta_p_grid: np.ndarray
    absorption: np.ndarray
    n_max_reference: float
    n_mean: np.ndarray
    cutoff_used: int
    states: list[DensityMatrix] | None = None


def _scan_point(args) -> tuple[float, int, DensityMatrix]:
    params, delta, eps0, fock_cutoff, cutoff_cap, tail_limit = args
    point = replace(params, delta_p=float(delta))
    rho, used = steady_state_auto(
        point, eps0, fock_cutoff=fock_cutoff, cutoff_cap=cutoff_cap, tail_limit=tail_limit
    )
    n_mean = float(np.real(expectation(rho, number_operator(rho.dims))))
    return n_mean, used, rho


def default_scan_drive(params: ModelParams) -> float:
    """Probe strength g / (10 sqrt(N!)) keeping the scan in the weak-probe regime."""
    if params.g <= 0:
        raise ValueError("default scan drive needs g > 0; pass eps0 explicitly")
    return params.g / (10.0 * math.sqrt(math.factorial(params.N)))


def absorption_scan(
    params: ModelParams,
    dims: HilbertDims,
    delta_grid: np.ndarray,
    eps0: float | None = None,
    *,
    workers: int = 1,
    cutoff_cap: int = CUTOFF_CAP,
    tail_limit: float = TAIL_LIMIT,
    keep_states: bool = False,
) -> SpectrumScan:
    """Normalized absorption spectrum over a probe-detuning grid (M = N drive)."""
    if params.M != params.N:
        raise ValueError("absorption scan requires drive nonlinearity M = N")
    delta_grid = np.asarray(delta_grid, dtype=float)
    if delta_grid.ndim != 1 or len(delta_grid) == 0:
        raise ValueError("detuning grid must be a non-empty 1-d array")
    if eps0 is None:
        eps0 = default_scan_drive(params)
    if eps0 <= 0:
        raise ValueError("scan drive strength must be > 0")

    reference = replace(params, g=0.0, delta_p=0.0)
    rho_ref, _ = steady_state_auto(
        reference, eps0, fock_cutoff=dims.fock_cutoff, cutoff_cap=cutoff_cap, tail_limit=tail_limit
    )
    n_max = float(np.real(expectation(rho_ref, number_operator(rho_ref.dims))))
    if n_max <= 0:
        raise ValueError("reference run absorbed nothing; cannot normalize")

    jobs = [(params, delta, eps0, dims.fock_cutoff, cutoff_cap, tail_limit) for delta in delta_grid]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_point, jobs))
    else:
        results = [_scan_point(job) for job in jobs]

    n_mean = np.array([r[0] for r in results])
    cutoff_used = max(r[1] for r in results)
    states = [r[2] for r in results] if keep_states else None
    return SpectrumScan(
        delta_p_grid=delta_grid,
        absorption=n_mean / n_max,
        n_max_reference=n_max,
        n_mean=n_mean,
        cutoff_used=cutoff_used,
        states=states,
    )


def dip_fwhm(scan: SpectrumScan) -> float:
    """Full width at half depth of the central reflectivity dip.

    The half level sits midway between the dip minimum and the scan
    maximum; the width is measured between the linearly interpolated
    crossings nearest to the minimum on each side.
    """
    x = scan.delta_p_grid
    y = scan.absorption
    i_min = int(np.argmin(y))
    level = 0.5 * (y[i_min] + float(np.max(y)))

    def cross(direction: int) -> float:
        i = i_min
        while 0 <= i + direction < len(y):
            j = i + direction
            if y[j] >= level:
                frac = (level - y[i]) / (y[j] - y[i])
                return float(x[i] + frac * (x[j] - x[i]))
            i = j
        raise ValueError("dip does not recover to the half level inside the scan window")

    return cross(+1) - cross(-1)


def output_field_map(rho: DensityMatrix, kappa_out: float, kappa_total: float | None = None) -> dict[str, complex]:
    """Transmitted-field moments through a mirror with decay rate kappa_out.

    The transmitted field is the intracavity field scaled by the square
    root of that mirror's decay rate; with the factor-2 amplitude-decay
    convention used here the flux picks up 2 kappa_out.
    """
    if kappa_out < 0:
        raise ValueError("mirror decay must be >= 0")
    if kappa_total is not None and kappa_out > kappa_total:
        raise ValueError("mirror decay cannot exceed the total cavity decay")
    a = annihilation(rho.dims)
    a_mean = expectation(rho, a)
    n_mean = expectation(rho, number_operator(rho.dims))
    return {
        "a_out_mean": math.sqrt(2.0 * kappa_out) * a_mean,
        "flux_out": 2.0 * kappa_out * complex(n_mean).real,
    }


def scan_workers_from_env(env: str = "NJCSIM_WORKERS") -> int:
    """Worker count for sweeps, from the environment (default 1)."""
    raw = os.environ.get(env, "1")
    try:
        workers = int(raw)
    except ValueError as exc:
        raise ValueError(f"{env} must be an integer, got {raw!r}") from exc
    return max(1, workers)
