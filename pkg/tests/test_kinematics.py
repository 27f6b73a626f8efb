"""Test the bicycle kinematic model of the robot."""
import math

import gymnasium as gym
import numpy as np
import pytest
from gymnasium.logger import ERROR

from paranav.common.exceptions import DomainError
from paranav.core.world import RobotPose
from paranav.sim.kinematics import kinematics_step, steering_angle

gym.logger.set_level(ERROR)


def test_straight_line():
    p = RobotPose()
    for _ in range(100):
        p = kinematics_step(p, 0.0, 1.0, 0.3, 0.01)
    assert p.x == pytest.approx(1.0)
    assert p.y == 0.0
    assert p.heading == 0.0


def test_standing_still():
    p = RobotPose(1.0, 2.0, 0.3)
    assert kinematics_step(p, 0.2, 0.0, 0.3, 0.02) is p


def test_reverse():
    p = kinematics_step(RobotPose(), 0.0, -0.25, 0.3, 0.02)
    assert p.x == pytest.approx(-0.005)


def test_turning_circle():
    """Constant steering drives a circle of radius ``wheelbase / tan(steer)``."""
    p = RobotPose()
    points = []
    for _ in range(2000):
        p = kinematics_step(p, 0.1, 0.5, 0.3, 0.01)
        points.append((p.x, p.y))
    xy = np.array(points)
    # Algebraic circle fit: x^2 + y^2 + a x + b y + c = 0.
    a_mat = np.column_stack([xy[:, 0], xy[:, 1], np.ones(len(xy))])
    rhs = -(xy[:, 0] ** 2 + xy[:, 1] ** 2)
    a, b, c = np.linalg.lstsq(a_mat, rhs, rcond=None)[0]
    radius = math.sqrt(a**2 / 4 + b**2 / 4 - c)
    assert radius == pytest.approx(0.3 / math.tan(0.1), rel=1e-3)


def test_steering_limit():
    with pytest.raises(DomainError):
        kinematics_step(RobotPose(), math.pi / 2, 1.0, 0.3, 0.02)


def test_steering_angle():
    assert steering_angle(math.radians(45.0)) == pytest.approx(math.radians(15.0))
    assert steering_angle(-0.3, linkage_ratio=0.5) == pytest.approx(-0.15)
