"""DC servo motor electro-mechanical model.

The armature circuit and the rotor are described by the standard DC-motor state
equations

.. math::

    \\frac{di_a}{dt} = \\frac{E - R_a i_a - K_b \\omega}{L_a} \\qquad
    \\frac{d\\omega}{dt} = \\frac{K_i i_a - B \\omega - T_L}{J} \\qquad
    \\frac{d\\theta}{dt} = \\omega

whose transfer function from armature voltage to angular velocity, for
:math:`B = 0`, is

.. math::

    G(s) = \\frac{\\omega(s)}{E(s)} = \\frac{K_i}{s^2 J L_a + s J R_a + K_i K_b}

The shaft position :math:`\\theta` is measured as an offset from the servo centre
position (0 rad corresponds to a 90° command).
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import signal

from paranav.common.exceptions import (
    DomainError,
    NumericalOverflowError,
    UnsupportedConfigurationError,
)
from paranav.common.utils import raise_on_violations


@dataclass(frozen=True)
class MotorParameters:
    """Electro-mechanical motor parameters.

    The defaults describe a small hobby servo with its gear train folded into the
    output shaft.

    Attributes:
        la (float): Armature inductance (H).
        ra (float): Armature resistance (Ohm).
        kb (float): Back-emf constant (V s/rad).
        ki (float): Torque constant (N m/A).
        j (float): Moment of inertia (kg m^2).
        b (float): Friction constant (N m s/rad).
        tl (float): Load torque (N m).
        v_max (float): Supply voltage saturation (V).
    """

    la: float = 2e-3
    ra: float = 2.0
    kb: float = 0.5
    ki: float = 0.5
    j: float = 2e-3
    b: float = 1e-3
    tl: float = 0.0
    v_max: float = 12.0

    def __post_init__(self):
        raise_on_violations(self.violations())

    def violations(self):
        """Returns the list of invariant violations (empty when valid)."""
        violations = [
            f"motor.{name} must be > 0, got {getattr(self, name)}."
            for name in ("la", "ra", "kb", "ki", "j", "v_max")
            if not getattr(self, name) > 0
        ]
        if not self.b >= 0:
            violations.append(f"motor.b must be >= 0, got {self.b}.")
        if not math.isfinite(self.tl):
            violations.append(f"motor.tl must be finite, got {self.tl}.")
        return violations


@dataclass(frozen=True)
class MotorState:
    """Motor state.

    Attributes:
        ia (float): Armature current (A).
        omega (float): Angular velocity (rad/s).
        theta (float): Angular position offset from centre (rad).
    """

    ia: float = 0.0
    omega: float = 0.0
    theta: float = 0.0

    @property
    def is_finite(self):
        """bool: Whether all state variables are finite."""
        return (
            math.isfinite(self.ia)
            and math.isfinite(self.omega)
            and math.isfinite(self.theta)
        )


@dataclass(frozen=True)
class DriveInput:
    """Applied armature voltage ``e`` (V)."""

    e: float = 0.0

    def saturated(self, v_max):
        """DriveInput: The input clipped to ``[-v_max, v_max]``."""
        return DriveInput(min(max(self.e, -v_max), v_max))


def back_emf(p, s):
    """Back electromotive force :math:`E_b = K_b \\omega` (V)."""
    return p.kb * s.omega


def motor_torque(p, s):
    """Motor torque :math:`T_m = K_i i_a` (N m)."""
    return p.ki * s.ia


def _rates(ia, omega, p, e):
    return (
        (e - p.ra * ia - p.kb * omega) / p.la,
        (p.ki * ia - p.b * omega - p.tl) / p.j,
        omega,
    )


def derivative(s, p, u):
    """Time derivative of the motor state.

    Args:
        s (MotorState): The current state.
        p (MotorParameters): The motor parameters.
        u (DriveInput): The applied voltage.

    Returns:
        tuple: ``(d ia/dt, d omega/dt, d theta/dt)``.
    """
    return _rates(s.ia, s.omega, p, u.e)


def step(s, p, u, dt):
    """Advance the state by one classical 4th order Runge-Kutta step.

    The input is held constant over the step.

    Args:
        s (MotorState): The current state.
        p (MotorParameters): The motor parameters.
        u (DriveInput): The applied voltage.
        dt (float): The step size (s).

    Returns:
        MotorState: The new state.

    Raises:
        DomainError: When ``dt`` is negative.
        NumericalOverflowError: When the result is not finite.
    """
    if dt < 0:
        raise DomainError(f"The step size must be >= 0, got {dt}.")
    if dt == 0:
        return s

    e = u.e
    ia, omega, theta = s.ia, s.omega, s.theta
    k1 = _rates(ia, omega, p, e)
    k2 = _rates(ia + 0.5 * dt * k1[0], omega + 0.5 * dt * k1[1], p, e)
    k3 = _rates(ia + 0.5 * dt * k2[0], omega + 0.5 * dt * k2[1], p, e)
    k4 = _rates(ia + dt * k3[0], omega + dt * k3[1], p, e)
    new = MotorState(
        ia=ia + dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        omega=omega + dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        theta=theta + dt / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
    )
    if not new.is_finite:
        raise NumericalOverflowError(
            f"Motor integration overflowed (dt={dt}, input={e} V): {new}."
        )
    return new


def simulate(s, p, u, dt, n_steps):
    """Apply :func:`step` ``n_steps`` times with a constant input.

    Returns:
        MotorState: The final state.
    """
    for _ in range(int(n_steps)):
        s = step(s, p, u, dt)
    return s


def transfer_function_gain(p, s):
    """Evaluate the voltage to velocity transfer function at a complex frequency.

    Args:
        p (MotorParameters): The motor parameters (``b`` is not part of the
            transfer function).
        s (complex): The complex frequency (rad/s).

    Returns:
        complex: :math:`G(s)`.

    Raises:
        DomainError: When ``s`` is a pole of the transfer function.
    """
    den = s * s * p.j * p.la + s * p.j * p.ra + p.ki * p.kb
    if den == 0:
        raise DomainError(f"s={s} is a pole of the motor transfer function.")
    return p.ki / den


def state_space(p):
    """Two-state (current, velocity) realisation with velocity as output.

    Returns:
        (tuple): tuple containing:

            -   A (:obj:`numpy.ndarray`): State matrix (2x2).
            -   B (:obj:`numpy.ndarray`): Input matrix (2x1).
            -   C (:obj:`numpy.ndarray`): Output matrix (1x2).
            -   D (:obj:`numpy.ndarray`): Feed-through matrix (1x1).
    """
    a = np.array(
        [
            [-p.ra / p.la, -p.kb / p.la],
            [p.ki / p.j, -p.b / p.j],
        ]
    )
    b = np.array([[1.0 / p.la], [0.0]])
    c = np.array([[0.0, 1.0]])
    d = np.array([[0.0]])
    return a, b, c, d


def state_space_frequency_response(p, omegas):
    """Frequency response :math:`C (i\\omega I - A)^{-1} B + D` of
    :func:`state_space`.

    Args:
        p (MotorParameters): The motor parameters.
        omegas (array_like): Angular frequencies (rad/s).

    Returns:
        numpy.ndarray: Complex gains, one per frequency.
    """
    a, b, c, d = state_space(p)
    identity = np.eye(a.shape[0])
    gains = [
        (c @ np.linalg.solve(1j * w * identity - a, b) + d).item()
        for w in np.atleast_1d(omegas)
    ]
    return np.array(gains, dtype=complex)


def to_transfer_function(p):
    """Transform the state-space model into transfer-function coefficients.

    Returns:
        (tuple): tuple containing:

            -   num (:obj:`numpy.ndarray`): Numerator coefficients.
            -   den (:obj:`numpy.ndarray`): Denominator coefficients (monic).
    """
    num, den = signal.ss2tf(*state_space(p))
    return np.atleast_1d(np.squeeze(num)), den


def step_response_analytic(p, e, t):
    """Closed-form angular velocity response to a voltage step from rest.

    Solves :math:`J L_a \\ddot\\omega + J R_a \\dot\\omega + K_i K_b \\omega = K_i e`
    with :math:`\\omega(0) = \\dot\\omega(0) = 0`.

    Args:
        p (MotorParameters): Motor parameters with ``b == 0`` and ``tl == 0``.
        e (float): The voltage step (V).
        t (float): Time since the step (s).

    Returns:
        float: :math:`\\omega(t)` (rad/s).

    Raises:
        UnsupportedConfigurationError: When friction or load torque is present.
        DomainError: When ``t`` is negative.
    """
    if p.b != 0 or p.tl != 0:
        raise UnsupportedConfigurationError(
            "The analytic step response requires b == 0 and tl == 0 "
            f"(got b={p.b}, tl={p.tl})."
        )
    if t < 0:
        raise DomainError(f"Time must be >= 0, got {t}.")

    a2, a1, a0 = p.j * p.la, p.j * p.ra, p.ki * p.kb
    omega_final = e / p.kb
    disc = a1 * a1 - 4.0 * a2 * a0
    if abs(disc) <= 1e-12 * a1 * a1:  # Critically damped.
        r = -a1 / (2.0 * a2)
        return omega_final * (1.0 - math.exp(r * t) * (1.0 - r * t))
    if disc > 0:  # Overdamped.
        sq = math.sqrt(disc)
        r1, r2 = (-a1 + sq) / (2.0 * a2), (-a1 - sq) / (2.0 * a2)
        return omega_final * (
            1.0 + (r2 * math.exp(r1 * t) - r1 * math.exp(r2 * t)) / (r1 - r2)
        )
    alpha = -a1 / (2.0 * a2)
    beta = math.sqrt(-disc) / (2.0 * a2)
    return omega_final * (
        1.0
        - math.exp(alpha * t)
        * (math.cos(beta * t) - (alpha / beta) * math.sin(beta * t))
    )


def servo_track(s, p, target_theta, kp, dt):
    """One position feedback step of the servo loop.

    The position error drives a proportional voltage clipped to the supply
    voltage, after which the motor is advanced by one :func:`step`.

    Args:
        s (MotorState): The current state.
        p (MotorParameters): The motor parameters.
        target_theta (float): Target shaft position (rad).
        kp (float): Proportional gain (V/rad).
        dt (float): The step size (s).

    Returns:
        MotorState: The new state.
    """
    if not kp > 0:
        raise DomainError(f"The servo gain must be > 0, got {kp}.")
    if not dt > 0:
        raise DomainError(f"The servo step size must be > 0, got {dt}.")
    u = DriveInput(kp * (target_theta - s.theta)).saturated(p.v_max)
    return step(s, p, u, dt)


def step_overshoot(p, kp, step_rad, dt=1e-3, duration=2.0):
    """Measure the relative overshoot of the servo loop for a position step.

    Args:
        p (MotorParameters): The motor parameters.
        kp (float): Proportional gain (V/rad).
        step_rad (float): Step size (rad), must be non-zero.
        dt (float, optional): Integration step (s). Defaults to ``1e-3``.
        duration (float, optional): Simulated time (s). Defaults to ``2.0``.

    Returns:
        float: ``max(0, (peak - step) / step)``.
    """
    if step_rad == 0:
        raise DomainError("The step size must be non-zero.")
    s = MotorState()
    peak = 0.0
    for _ in range(int(round(duration / dt))):
        s = servo_track(s, p, step_rad, kp, dt)
        peak = max(peak, s.theta / step_rad)
    return max(0.0, peak - 1.0)


def settling_time(p, kp, step_rad, tolerance=0.01, dt=1e-4, duration=1.0):
    """Measure how long the servo loop takes to settle on a position step.

    Args:
        p (MotorParameters): The motor parameters.
        kp (float): Proportional gain (V/rad).
        step_rad (float): Step size (rad), must be non-zero.
        tolerance (float, optional): Band half-width relative to the step.
            Defaults to ``0.01``.
        dt (float, optional): Integration step (s). Defaults to ``1e-4``.
        duration (float, optional): Simulated time (s). Defaults to ``1.0``.

    Returns:
        float: Time (s) after which ``theta`` stays inside the band until the end of
        the run, or ``inf`` when it is outside the band at the end.
    """
    if step_rad == 0:
        raise DomainError("The step size must be non-zero.")
    band = tolerance * abs(step_rad)
    s = MotorState()
    n_steps = int(round(duration / dt))
    settled_at = 0.0
    for k in range(1, n_steps + 1):
        s = servo_track(s, p, step_rad, kp, dt)
        if abs(s.theta - step_rad) > band:
            settled_at = math.inf if k == n_steps else k * dt
    return settled_at


def phase_deg(gain):
    """Phase of a complex gain in degrees."""
    return math.degrees(cmath.phase(gain))
