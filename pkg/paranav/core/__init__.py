"""The paranav core models: the Paranalyzer, the servo motor, the PWM command
signal, the corridor world and the steering controller.
"""
