"""A gymnasium environment for a terrestrial mobile robot that drives through a
corridor while a PWM commanded DC servo motor steers its front wheel. The robot
senses its surroundings with six ultrasonic sensors.
"""
from paranav.envs.robotics.corridor_servo.corridor_servo import CorridorServo
