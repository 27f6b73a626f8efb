"""Model of the servo command signal generated by the microcontroller.

The servo is commanded by a periodic pulse (20 ms period by default) whose high
time encodes the requested angle. This module maps angles to pulse widths through
a two-point calibration, renders the periodic signal as a sampled waveform and
measures the high time back from a waveform like an oscilloscope cursor pair.
"""
from dataclasses import dataclass

import numpy as np

from paranav.common.exceptions import (
    ConfigValidationError,
    DomainError,
    MeasurementError,
)
from paranav.common.utils import raise_on_violations

ANGLE_MIN = 0.0
ANGLE_MAX = 180.0


@dataclass(frozen=True)
class PwmConfig:
    """Signal configuration.

    Attributes:
        period (float): Signal period (ms).
        sample_rate (float): Rendering sample rate (samples/s).
    """

    period: float = 20.0
    sample_rate: float = 1_000_000.0

    def __post_init__(self):
        raise_on_violations(self.violations())

    def violations(self):
        """Returns the list of invariant violations (empty when valid)."""
        violations = []
        if not self.period > 0:
            violations.append(f"pwm.period must be > 0, got {self.period}.")
        elif not self.sample_rate * self.period / 1000.0 >= 100:
            violations.append(
                "pwm.sample_rate must give at least 100 samples per period, got "
                f"{self.sample_rate * self.period / 1000.0:g}."
            )
        return violations


@dataclass(frozen=True)
class ServoCalibration:
    """Linear angle to pulse-width map through two calibration points.

    Attributes:
        point_a (tuple): ``(angle in degrees, pulse width in ms)``.
        point_b (tuple): ``(angle in degrees, pulse width in ms)``.
    """

    point_a: tuple = (0.0, 1.0)
    point_b: tuple = (180.0, 2.0)

    def __post_init__(self):
        object.__setattr__(self, "point_a", tuple(float(v) for v in self.point_a))
        object.__setattr__(self, "point_b", tuple(float(v) for v in self.point_b))
        raise_on_violations(self.violations())

    def violations(self, period=None):
        """Returns the list of invariant violations (empty when valid).

        Args:
            period (float, optional): When given, the pulse commanded at any angle
                must also stay below this period (ms).
        """
        violations = []
        if self.point_a[0] == self.point_b[0]:
            violations.append(
                "calibration points must have different angles, both are "
                f"{self.point_a[0]}."
            )
            return violations
        for name, point in (("point_a", self.point_a), ("point_b", self.point_b)):
            if not point[1] > 0:
                violations.append(
                    f"calibration.{name} pulse must be > 0 ms, got {point[1]}."
                )
        if period is not None:
            longest = max(
                angle_to_pulse(ANGLE_MIN, self), angle_to_pulse(ANGLE_MAX, self)
            )
            if not longest < period:
                violations.append(
                    f"calibrated pulse ({longest:g} ms) must stay below the period "
                    f"({period:g} ms)."
                )
        return violations

    @property
    def slope(self):
        """float: Pulse width change per degree (ms/deg)."""
        return (self.point_b[1] - self.point_a[1]) / (self.point_b[0] - self.point_a[0])

    @classmethod
    def from_name(cls, name):
        """Return a named calibration preset (``datasheet`` or ``measured``)."""
        try:
            return CALIBRATIONS[name.lower()]
        except (KeyError, AttributeError) as e:
            raise ConfigValidationError(
                f"Unknown calibration preset '{name}'. Options are "
                f"{', '.join(CALIBRATIONS)}."
            ) from e


# The servo datasheet map and the map measured on the oscilloscope.
DATASHEET = ServoCalibration((0.0, 1.0), (180.0, 2.0))
MEASURED = ServoCalibration((90.0, 1.020), (180.0, 2.040))
CALIBRATIONS = {"datasheet": DATASHEET, "measured": MEASURED}


@dataclass(frozen=True)
class PwmWaveform:
    """A rendered signal covering an integer number of periods.

    Attributes:
        samples (numpy.ndarray): Boolean signal levels (``True`` is high).
        samples_per_period (int): Number of samples in one period.
        positive_duty (float): Fraction of a period at high level.
    """

    samples: np.ndarray
    samples_per_period: int
    positive_duty: float

    @property
    def n_periods(self):
        """int: Number of rendered periods."""
        return len(self.samples) // self.samples_per_period


def angle_to_pulse(angle, c=DATASHEET):
    """Pulse width commanding an angle.

    Args:
        angle (float): Angle in degrees, clamped to ``[0, 180]``.
        c (ServoCalibration, optional): The calibration. Defaults to
            :data:`DATASHEET`.

    Returns:
        float: Pulse width (ms).
    """
    angle = min(max(angle, ANGLE_MIN), ANGLE_MAX)
    return c.point_a[1] + (angle - c.point_a[0]) * c.slope


def pulse_to_angle(pulse, c=DATASHEET):
    """Angle commanded by a pulse width (inverse of :func:`angle_to_pulse`).

    The pulse is clamped to the calibrated pulse range of ``[0°, 180°]``.

    Args:
        pulse (float): Pulse width (ms).
        c (ServoCalibration, optional): The calibration. Defaults to
            :data:`DATASHEET`.

    Returns:
        float: Angle (degrees).
    """
    low, high = sorted((angle_to_pulse(ANGLE_MIN, c), angle_to_pulse(ANGLE_MAX, c)))
    pulse = min(max(pulse, low), high)
    angle = c.point_a[0] + (pulse - c.point_a[1]) / c.slope
    return min(max(angle, ANGLE_MIN), ANGLE_MAX)


def samples_per_period(cfg):
    """int: Number of samples in one signal period."""
    return int(round(cfg.period * cfg.sample_rate / 1000.0))


def pulse_samples(pulse, cfg):
    """int: Number of high samples used to render a pulse (nearest sample)."""
    return int(round(pulse * cfg.sample_rate / 1000.0))


def positive_duty(pulse, cfg):
    """float: Fraction of the period that a pulse keeps the signal high."""
    return pulse / cfg.period


def render_waveform(pulse, cfg=None, n_periods=1):
    """Render the periodic servo signal.

    Every period starts with the high pulse followed by low samples.

    Args:
        pulse (float): Pulse width (ms) in ``[0, period)``.
        cfg (PwmConfig, optional): The signal configuration.
        n_periods (int, optional): Number of periods to render. Defaults to ``1``.

    Returns:
        PwmWaveform: The rendered signal.

    Raises:
        DomainError: When the pulse is negative, not shorter than the period or the
            period count is smaller than one.
    """
    cfg = PwmConfig() if cfg is None else cfg
    if not 0 <= pulse < cfg.period:
        raise DomainError(
            f"Pulse width must lie in [0, {cfg.period}) ms, got {pulse} ms."
        )
    if int(n_periods) < 1:
        raise DomainError(f"At least one period must be rendered, got {n_periods}.")

    period_samples = samples_per_period(cfg)
    high = pulse_samples(pulse, cfg)
    if high >= period_samples:
        raise DomainError(
            f"Pulse width {pulse} ms fills the whole period after quantization."
        )
    one_period = np.zeros(period_samples, dtype=bool)
    one_period[:high] = True
    return PwmWaveform(
        samples=np.tile(one_period, int(n_periods)),
        samples_per_period=period_samples,
        positive_duty=high / period_samples,
    )


def measure_pulse_width(w, cfg=None):
    """Measure the mean high time of a waveform (rising to falling edge).

    The signal is assumed low before the first and after the last sample.

    Args:
        w (PwmWaveform): The waveform.
        cfg (PwmConfig, optional): The signal configuration used to render it.

    Returns:
        float: Mean pulse width (ms).

    Raises:
        MeasurementError: When the waveform contains no pulse.
    """
    cfg = PwmConfig() if cfg is None else cfg
    levels = np.concatenate(([0], np.asarray(w.samples, dtype=np.int8), [0]))
    edges = np.diff(levels)
    rising = np.flatnonzero(edges == 1)
    falling = np.flatnonzero(edges == -1)
    if rising.size == 0 or falling.size == 0:
        raise MeasurementError("No rising and falling edge found in the waveform.")
    return float(np.mean(falling - rising)) * 1000.0 / cfg.sample_rate


def waveform_rows(w):
    """Yield ``(sample_index, level)`` rows of a waveform."""
    for index, level in enumerate(w.samples):
        yield index, int(level)
