"""Driven multiphoton Jaynes-Cummings cavity QED simulator.

Simulates a two-level atom exchanging N photons at a time with a damped
cavity mode under an M-photon drive: arbitrary Fock-space rotations in the
strong-coupling regime, the Fock-state filter (quantum scissor), and the
multiphoton-induced reflectivity dip of the weak-coupling regime.
"""

__version__ = "0.1.0"

from .algebra import (
    DensityMatrix,
    HilbertDims,
    Operator,
    annihilation,
    atomic_operators,
    basis_state,
    cavity_ladder,
    expectation,
    fock_probabilities,
    fock_projector,
    ground_state,
    identity_operator,
    number_operator,
    op_power,
    pure_state,
)
from .errors import ConfigError, CutoffEscalationError, IntegrationError, SteadyStateError
from .lindblad import (
    Liouvillian,
    TrajectoryResult,
    build_liouvillian,
    evolve,
    evolve_ground_auto,
    steady_state,
    steady_state_auto,
    unvectorize,
    vectorize,
)
from .model import (
    ConstantPulse,
    EigenLevel,
    GaussianPulse,
    ModelParams,
    PulseEnvelope,
    analytic_spectrum,
    envelope_integral,
    envelope_peak,
    envelope_value,
    hamiltonian_bare,
    hamiltonian_interaction,
)
from .protocols import (
    RotationSpec,
    SpectrumScan,
    absorption_scan,
    default_scan_drive,
    dip_fwhm,
    effective_hamiltonian,
    embed_rotation_state,
    filter_leakage,
    output_field_map,
    rotation_angle,
    rotation_fidelity,
    rotation_state,
)
