"""Exception hierarchy.

``PhysicsError`` subclasses mark configurations that are well-formed input
but physically infeasible or degenerate; the CLI maps them to exit code 2,
while plain usage problems (bad flags, malformed tokens) exit with 1.
"""


class PolarixError(Exception):
    """Base class for all polarix errors."""


class PhysicsError(PolarixError):
    """Infeasible or degenerate physics; CLI exit code 2."""


class EvanescentModeError(PhysicsError):
    """Requested wavenumber is at or below a mode cutoff."""


class InfeasibleDriveError(PhysicsError):
    """No real Rabi frequency realizes the requested drive parameter."""


class DegenerateConfigurationError(PhysicsError):
    """Emitter decoupled and on resonance; scattering is undefined 0/0."""


class IllConditionedConversionError(PhysicsError):
    """Closed-form inverse solution is 0/0 for a non-trivial conversion."""
