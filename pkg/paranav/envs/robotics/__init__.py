"""Paranav gymnasium environments that are based on mobile robots."""
from paranav.envs.robotics.corridor_servo.corridor_servo import CorridorServo
