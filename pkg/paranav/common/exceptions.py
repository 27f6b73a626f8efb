"""The paranav exception hierarchy.

All errors derive from :class:`gymnasium.error.Error` so that callers driving the
:class:`~paranav.envs.robotics.corridor_servo.corridor_servo.CorridorServo`
environment through gymnasium tooling can catch them in one place.
"""
from gymnasium.error import Error


class ParanavError(Error):
    """Base class of all paranav errors."""


class DomainError(ParanavError, ValueError):
    """An argument lies outside the domain of the operation."""


class NumericalOverflowError(ParanavError, ArithmeticError):
    """The motor integrator produced a non-finite state."""


class UnsupportedConfigurationError(ParanavError, ValueError):
    """The requested operation is not defined for the given parameters."""


class MeasurementError(ParanavError):
    """A waveform measurement could not be performed (e.g. no edges)."""


class ConfigValidationError(ParanavError, ValueError):
    """One or more configuration values are invalid.

    Attributes:
        violations (list): Human readable description of every violation.
    """

    def __init__(self, violations):
        """Create a new validation error.

        Args:
            violations (Union[str, list]): A violation or a list of violations.
        """
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__(
            f"Invalid configuration ({len(self.violations)} violation"
            f"{'' if len(self.violations) == 1 else 's'}):\n"
            + "\n".join(f"  - {violation}" for violation in self.violations)
        )
