"""Exception types shared across the simulator."""


class ConfigError(ValueError):
    """Invalid scenario configuration."""


class IntegrationError(RuntimeError):
    """Time integration failed: non-finite state or no step convergence."""


class SteadyStateError(RuntimeError):
    """Steady-state solve failed or the null space is degenerate."""


class CutoffEscalationError(RuntimeError):
    """Fock-cutoff escalation exceeded its cap without meeting the tail bound."""
