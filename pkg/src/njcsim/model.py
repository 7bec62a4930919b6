"""Physical model: Hamiltonians, analytic eigensystem and drive envelopes.

Two Hamiltonians are exposed.  The driven-frame Hamiltonian

    H = delta_p (a^+ a + N sigma_z / 2)
        + [eps(t) a^M e^{-i chi} + g a^N sigma_+ + H.c.]

is the one used for all dynamics; it is already rotated at the drive
frequency, so the drive enters as a slowly varying envelope eps(t) and
delta_p is the drive-cavity detuning.  The bare N-photon Hamiltonian

    H0 = omega a^+ a + N omega sigma_z / 2 + g (sigma_+ a^N + H.c.)

exists only to validate the analytic spectrum against a numerical
diagonalization; all rates and energies elsewhere are in units of the
cavity decay kappa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .algebra import (
    HilbertDims,
    Operator,
    annihilation,
    atomic_operators,
    basis_state,
    number_operator,
    op_power,
)


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters, rates in units of kappa, times in 1/kappa.

    N is the atom-field nonlinearity (N photons exchanged per atomic flip),
    M the drive nonlinearity.  ``resonant`` asserts the atomic frequency
    sits at N times the cavity frequency; the driven-frame Hamiltonian is
    only valid in that case, so it must stay True.

    kappa may be zero for idealized (dissipation-free) runs; the
    steady-state solver separately requires kappa > 0.
    """

    N: int
    M: int
    g: float
    delta_p: float = 0.0
    chi: float = 0.0
    kappa: float = 1.0
    gamma: float = 0.0
    gamma_phi: float = 0.0
    resonant: bool = True

    def __post_init__(self):
        if self.N < 1 or self.M < 1:
            raise ValueError("nonlinearities N and M must be >= 1")
        if self.g < 0:
            raise ValueError("coupling g must be >= 0")
        for name in ("kappa", "gamma", "gamma_phi"):
            if getattr(self, name) < 0:
                raise ValueError(f"rate {name} must be >= 0")
        if not self.resonant:
            raise ValueError("only the resonant case (atomic frequency = N x cavity frequency) is modeled")


@dataclass(frozen=True)
class ConstantPulse:
    """Constant drive eps(t) = eps0."""

    eps0: float

    def __post_init__(self):
        if self.eps0 < 0:
            raise ValueError("drive amplitude must be >= 0")


@dataclass(frozen=True)
class GaussianPulse:
    """Gaussian drive eps(t) = eps_max / sqrt(2 pi duration^2) * exp(-(t - t_center)^2 / 2 duration^2).

    eps_max is the pulse area (the prefactor normalizes the Gaussian), so the
    peak amplitude is eps_max / sqrt(2 pi duration^2).
    """

    eps_max: float
    duration: float
    t_center: float

    def __post_init__(self):
        if self.eps_max < 0:
            raise ValueError("pulse amplitude must be >= 0")
        if self.duration <= 0:
            raise ValueError("pulse duration must be > 0")


PulseEnvelope = Union[ConstantPulse, GaussianPulse]


def envelope_value(pulse: PulseEnvelope, t: float) -> float:
    """Instantaneous drive strength eps(t)."""
    if isinstance(pulse, ConstantPulse):
        return pulse.eps0
    x = (t - pulse.t_center) / pulse.duration
    return pulse.eps_max / math.sqrt(2.0 * math.pi * pulse.duration**2) * math.exp(-0.5 * x * x)


def envelope_integral(pulse: PulseEnvelope, t: float) -> float:
    """Closed form of the pulse area from 0 to t.

    The integral starts at t = 0, not -infinity; scenarios place Gaussian
    pulses with t_center >= 6 durations so the truncated tail is below
    1e-8 of the total area.
    """
    if t < 0:
        raise ValueError("time must be >= 0")
    if isinstance(pulse, ConstantPulse):
        return pulse.eps0 * t
    s = pulse.duration * math.sqrt(2.0)
    return 0.5 * pulse.eps_max * (math.erf((t - pulse.t_center) / s) + math.erf(pulse.t_center / s))


def envelope_peak(pulse: PulseEnvelope) -> float:
    """Global maximum of eps(t); used for integrator step sizing."""
    if isinstance(pulse, ConstantPulse):
        return pulse.eps0
    return pulse.eps_max / math.sqrt(2.0 * math.pi * pulse.duration**2)


def _require_cutoff(dims: HilbertDims, *orders: int) -> None:
    needed = max(orders)
    if dims.fock_cutoff <= needed:
        raise ValueError(
            f"Fock cutoff {dims.fock_cutoff} too small: need more than {needed} levels"
        )


def hamiltonian_interaction(params: ModelParams, dims: HilbertDims, eps: float) -> Operator:
    """Driven-frame Hamiltonian at instantaneous drive strength eps."""
    if eps < 0:
        raise ValueError("drive strength must be >= 0")
    _require_cutoff(dims, params.N, params.M)
    a = annihilation(dims)
    _, sigma_plus, sigma_z = atomic_operators(dims)
    h = params.delta_p * (number_operator(dims) + (0.5 * params.N) * sigma_z)
    if eps != 0.0:
        drive = (eps * np.exp(-1j * params.chi)) * op_power(a, params.M)
        h = h + drive + drive.dag()
    if params.g != 0.0:
        coupling = params.g * (op_power(a, params.N) @ sigma_plus)
        h = h + coupling + coupling.dag()
    return h


def drive_structure(params: ModelParams, dims: HilbertDims) -> Operator:
    """Unit-strength drive term a^M e^{-i chi} + H.c.; eps(t) scales it linearly."""
    _require_cutoff(dims, params.M)
    a = annihilation(dims)
    lower = np.exp(-1j * params.chi) * op_power(a, params.M)
    return lower + lower.dag()


def hamiltonian_bare(params: ModelParams, dims: HilbertDims, omega: float) -> Operator:
    """Bare N-photon Hamiltonian at cavity frequency omega (spectrum oracle only)."""
    _require_cutoff(dims, params.N)
    _, sigma_plus, sigma_z = atomic_operators(dims)
    h = omega * (number_operator(dims) + (0.5 * params.N) * sigma_z)
    if params.g != 0.0:
        coupling = params.g * (op_power(annihilation(dims), params.N) @ sigma_plus)
        h = h + coupling + coupling.dag()
    return h


@dataclass(frozen=True)
class EigenLevel:
    """One analytic eigenlevel of the bare Hamiltonian.

    kind is "uncorrelated" for |g, n> (n < N), "plus"/"minus" for the
    dressed doublet (|g, n> +/- |e, n-N>)/sqrt(2) (n >= N).
    """

    kind: str
    n: int
    energy: float
    state: np.ndarray


def analytic_spectrum(params: ModelParams, dims: HilbertDims, omega: float) -> list[EigenLevel]:
    """Closed-form eigensystem of the bare Hamiltonian, sorted by energy.

    Uncorrelated levels |g, n> carry energy (n - N/2) omega; the dressed
    doublets split by +/- g sqrt(n! / (n-N)!).
    """
    _require_cutoff(dims, params.N)
    n_jc = params.N
    d = dims.fock_cutoff
    levels: list[EigenLevel] = []
    for n in range(min(n_jc, d)):
        state = basis_state(dims, 0, n)
        levels.append(EigenLevel("uncorrelated", n, (n - 0.5 * n_jc) * omega, state))
    for n in range(n_jc, d):
        split = params.g * math.sqrt(math.factorial(n) / math.factorial(n - n_jc))
        base = (n - 0.5 * n_jc) * omega
        upper = basis_state(dims, 0, n)
        lower = basis_state(dims, 1, n - n_jc)
        plus = (upper + lower) / math.sqrt(2.0)
        minus = (upper - lower) / math.sqrt(2.0)
        levels.append(EigenLevel("plus", n, base + split, plus))
        levels.append(EigenLevel("minus", n, base - split, minus))
    levels.sort(key=lambda lv: (lv.energy, lv.n, lv.kind))
    return levels
