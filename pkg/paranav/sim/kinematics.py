"""Bicycle (single track) kinematic model of the robot."""
import math

from paranav.common.exceptions import DomainError
from paranav.core.world import RobotPose


def steering_angle(theta, linkage_ratio=1.0 / 3.0):
    """Front wheel steering angle produced by the servo shaft.

    Args:
        theta (float): Servo shaft offset from the centre position (rad, positive
            turns left).
        linkage_ratio (float, optional): Wheel angle per servo angle. Defaults to
            ``1/3``.

    Returns:
        float: Steering angle (rad, positive turns left).
    """
    return theta * linkage_ratio


def kinematics_step(p, steer_theta, v, wheelbase, dt):
    """Advance the pose by one step of the bicycle model.

    The heading is updated first and the position is advanced along the new
    heading.

    Args:
        p (RobotPose): The current pose.
        steer_theta (float): Steering angle (rad), ``|steer_theta| < pi/2``.
        v (float): Signed speed (m/s).
        wheelbase (float): Wheelbase (m).
        dt (float): Time step (s).

    Returns:
        RobotPose: The new pose.
    """
    if not abs(steer_theta) < math.pi / 2:
        raise DomainError(
            f"Steering angle must lie in (-pi/2, pi/2), got {steer_theta}."
        )
    if v == 0:
        return p
    heading = p.heading + (v / wheelbase) * math.tan(steer_theta) * dt
    return RobotPose(
        x=p.x + v * math.cos(heading) * dt,
        y=p.y + v * math.sin(heading) * dt,
        heading=heading,
    )
