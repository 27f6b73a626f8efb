"""Steering decisions and servo protection.

The logical state of the "Free Front" proposition selects a turn magnitude and a
drive mode from an :class:`ActionTable`. The turn is made toward the more open
side. The :func:`protect` step keeps the command inside the allowed servo window
and relieves the servo when it dwells too long at a window limit.
"""
import math
from dataclasses import dataclass, field
from enum import Enum

from gymnasium import logger

from paranav.common.exceptions import ConfigValidationError, DomainError
from paranav.common.utils import raise_on_violations
from paranav.core.paralogic import LogicalState

CENTER_ANGLE = 90.0


class Drive(str, Enum):
    """Drive modes of the robot."""

    FORWARD = "forward"
    STOP = "stop"
    REVERSE = "reverse"

    @property
    def speed_sign(self):
        """int: ``+1`` forward, ``0`` stop and ``-1`` reverse."""
        return {Drive.FORWARD: 1, Drive.STOP: 0, Drive.REVERSE: -1}[self]

    @classmethod
    def from_sign(cls, sign):
        """Drive: Mode from a (continuous) drive sign in ``[-1, 1]``."""
        if sign > 0.5:
            return cls.FORWARD
        if sign < -0.5:
            return cls.REVERSE
        return cls.STOP


@dataclass(frozen=True)
class SteeringCommand:
    """Servo angle (deg, 90 is straight, larger turns left) and drive mode."""

    servo_angle: float = CENTER_ANGLE
    drive: Drive = Drive.FORWARD

    def __post_init__(self):
        if not 0.0 <= self.servo_angle <= 180.0:
            raise ConfigValidationError(
                f"Servo angle must lie in [0, 180], got {self.servo_angle}."
            )


@dataclass(frozen=True)
class SteeringRequest:
    """Raw servo angle request (deg) that :func:`protect` brings into range."""

    servo_angle: float = CENTER_ANGLE
    drive: Drive = Drive.FORWARD

    def __post_init__(self):
        if not math.isfinite(self.servo_angle):
            raise DomainError(f"Servo angle must be finite, got {self.servo_angle}.")


@dataclass(frozen=True)
class ActionEntry:
    """Turn magnitude (deg from 90) and drive mode of one logical state."""

    magnitude: float
    drive: Drive


DEFAULT_ACTIONS = {
    LogicalState.TRUE: ActionEntry(0.0, Drive.FORWARD),
    LogicalState.FALSE: ActionEntry(45.0, Drive.REVERSE),
    LogicalState.INCONSISTENT: ActionEntry(15.0, Drive.FORWARD),
    LogicalState.PARACOMPLETE: ActionEntry(15.0, Drive.FORWARD),
    LogicalState.QUASI_TRUE_TENDING_INCONSISTENT: ActionEntry(10.0, Drive.FORWARD),
    LogicalState.QUASI_INCONSISTENT_TENDING_TRUE: ActionEntry(20.0, Drive.FORWARD),
    LogicalState.QUASI_TRUE_TENDING_PARACOMPLETE: ActionEntry(10.0, Drive.FORWARD),
    LogicalState.QUASI_PARACOMPLETE_TENDING_TRUE: ActionEntry(20.0, Drive.FORWARD),
    LogicalState.QUASI_FALSE_TENDING_PARACOMPLETE: ActionEntry(35.0, Drive.STOP),
    LogicalState.QUASI_PARACOMPLETE_TENDING_FALSE: ActionEntry(30.0, Drive.STOP),
    LogicalState.QUASI_FALSE_TENDING_INCONSISTENT: ActionEntry(35.0, Drive.STOP),
    LogicalState.QUASI_INCONSISTENT_TENDING_FALSE: ActionEntry(30.0, Drive.STOP),
}


@dataclass(frozen=True)
class ActionTable:
    """Per-state turn magnitude and drive mode.

    Attributes:
        entries (dict): :class:`ActionEntry` keyed by :class:`LogicalState`. States
            missing from the mapping use :data:`DEFAULT_ACTIONS`.
    """

    entries: dict = field(default_factory=lambda: dict(DEFAULT_ACTIONS))

    def __post_init__(self):
        entries = dict(DEFAULT_ACTIONS)
        entries.update(
            {LogicalState.from_any(k): v for k, v in dict(self.entries).items()}
        )
        object.__setattr__(self, "entries", entries)
        raise_on_violations(self.violations())

    def violations(self):
        """Returns the list of invariant violations (empty when valid)."""
        return [
            f"action_table.{state.code}.magnitude must lie in [0, 90], got "
            f"{entry.magnitude}."
            for state, entry in sorted(self.entries.items())
            if not 0.0 <= entry.magnitude <= 90.0
        ]

    def __getitem__(self, state):
        return self.entries[LogicalState.from_any(state)]


@dataclass(frozen=True)
class ProtectionPolicy:
    """Servo protection settings.

    Attributes:
        angle_min (float): Lowest allowed command (deg).
        angle_max (float): Highest allowed command (deg).
        max_dwell_ticks (int): Maximum number of consecutive commands at a window
            limit.
        relief_step (float): Degrees a relieved command moves back toward 90.
            When 90 lies on or outside a window limit, relief moves toward the
            window midpoint instead.
    """

    angle_min: float = 0.0
    angle_max: float = 180.0
    max_dwell_ticks: int = 25
    relief_step: float = 10.0

    def __post_init__(self):
        raise_on_violations(self.violations())

    def violations(self):
        """Returns the list of invariant violations (empty when valid)."""
        violations = []
        if not 0.0 <= self.angle_min < self.angle_max <= 180.0:
            violations.append(
                "protection must satisfy 0 <= angle_min < angle_max <= 180, got "
                f"angle_min={self.angle_min} and angle_max={self.angle_max}."
            )
        if not (float(self.max_dwell_ticks).is_integer() and self.max_dwell_ticks >= 1):
            violations.append(
                "protection.max_dwell_ticks must be an integer >= 1, got "
                f"{self.max_dwell_ticks}."
            )
        if not self.relief_step > 0:
            violations.append(
                f"protection.relief_step must be > 0, got {self.relief_step}."
            )
        return violations

    @property
    def relief_target(self):
        """float: Angle (deg) relieved commands move toward, inside the window."""
        target = min(max(CENTER_ANGLE, self.angle_min), self.angle_max)
        if target in (self.angle_min, self.angle_max):
            return (self.angle_min + self.angle_max) / 2.0
        return target


def decide(a, openness, t=None):
    """Map an analysis result to a steering command.

    Args:
        a (AnnotationAnalysis): The Paranalyzer result.
        openness (float): Signed side openness (positive when the left is more
            open). A tie turns right.
        t (ActionTable, optional): The action table. Defaults to
            :data:`DEFAULT_ACTIONS`.

    Returns:
        SteeringCommand: The command.
    """
    entry = (ActionTable() if t is None else t)[a.state]
    if openness > 0:
        angle = CENTER_ANGLE + entry.magnitude
    else:
        angle = CENTER_ANGLE - entry.magnitude
    return SteeringCommand(servo_angle=angle, drive=entry.drive)


def _dwelling(history, limit, max_dwell_ticks):
    if len(history) < max_dwell_ticks:
        return False
    return all(angle == limit for angle in list(history)[-max_dwell_ticks:])


def protect(c, history=(), p=None):
    """Keep a command inside the servo window and relieve long dwells at a limit.

    Args:
        c (Union[SteeringCommand, SteeringRequest]): The requested command. A
            :class:`SteeringRequest` may lie outside ``[0, 180]``.
        history (Sequence[float]): Previously emitted (protected) angles, oldest
            first.
        p (ProtectionPolicy, optional): The policy.

    Returns:
        SteeringCommand: The protected command, always inside the window.
    """
    p = ProtectionPolicy() if p is None else p
    angle = min(max(c.servo_angle, p.angle_min), p.angle_max)
    for limit in (p.angle_min, p.angle_max):
        if angle == limit and _dwelling(history, limit, int(p.max_dwell_ticks)):
            target = p.relief_target
            step = min(p.relief_step, abs(limit - target))
            angle = limit - step if limit > target else limit + step
            logger.debug(
                f"Servo dwelled {int(p.max_dwell_ticks)} ticks at {limit}°, "
                f"relieved to {angle}°."
            )
            break
    if isinstance(c, SteeringCommand) and angle == c.servo_angle:
        return c
    return SteeringCommand(servo_angle=angle, drive=c.drive)


def reverse_guard(c, rear_distance, d_block):
    """Turn a reverse command into a stop when the rear is blocked.

    Args:
        c (SteeringCommand): The command.
        rear_distance (float): Rear sensor reading (m).
        d_block (float): Blocking distance (m).

    Returns:
        SteeringCommand: The guarded command.
    """
    if c.drive is Drive.REVERSE and rear_distance < d_block:
        return SteeringCommand(servo_angle=c.servo_angle, drive=Drive.STOP)
    return c
