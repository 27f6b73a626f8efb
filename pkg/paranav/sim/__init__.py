"""Scenario configuration, robot kinematics, the scenario runner and the command
line interface.
"""
