"""Closed loop scenario runner.

Every tick the Paranalyzer controller turns the six sensor readings into a
steering command which the :class:`~paranav.envs.robotics.corridor_servo.CorridorServo`
plant executes. The run stops when the robot completes the corridor, collides or
uses up its tick budget.
"""
from collections import deque
from dataclasses import dataclass

import numpy as np
from gymnasium import logger

from paranav.common.exceptions import DomainError
from paranav.core.controller import SteeringCommand, decide, protect, reverse_guard
from paranav.core.paralogic import AnnotationAnalysis, Evidence, classify
from paranav.core.world import REAR, clearance, evidence_from_distances, side_openness
from paranav.envs.robotics.corridor_servo.corridor_servo import CorridorServo
from paranav.sim.trace import OutcomeResult, ScenarioOutcome, TraceRecord


@dataclass(frozen=True)
class ControlDecision:
    """Everything the controller derived during one tick.

    Attributes:
        evidence (Evidence): The "Free Front" annotation.
        analysis (AnnotationAnalysis): The Paranalyzer result.
        commanded (SteeringCommand): The command chosen from the action table.
        protected (SteeringCommand): The command after servo protection.
        applied (SteeringCommand): The protected command after the rear check.
    """

    evidence: Evidence
    analysis: AnnotationAnalysis
    commanded: SteeringCommand
    protected: SteeringCommand
    applied: SteeringCommand


def control(d, cfg, history):
    """Run the controller for one tick.

    Args:
        d (Sequence[float]): The six sensor distances (m).
        cfg (ScenarioConfig): The scenario.
        history (collections.deque): Previously emitted protected angles. The
            protected angle of this tick is appended.

    Returns:
        ControlDecision: The decision.
    """
    evidence = evidence_from_distances(d, cfg.evidence, cfg.sensors)
    analysis = classify(evidence, cfg.thresholds)
    commanded = decide(analysis, side_openness(d), cfg.action_table)
    protected = protect(commanded, history, cfg.protection)
    applied = reverse_guard(protected, d[REAR], cfg.evidence.d_block)
    history.append(protected.servo_angle)
    return ControlDecision(evidence, analysis, commanded, protected, applied)


def _result(gap, x, goal_line):
    if gap <= 0.0:
        return OutcomeResult.COLLIDED
    if x >= goal_line:
        return OutcomeResult.COMPLETED
    return OutcomeResult.TIMEOUT


def run_scenario(cfg):
    """Simulate a scenario.

    Args:
        cfg (ScenarioConfig): The scenario.

    Returns:
        (tuple): tuple containing:

            -   trace (:obj:`list`): One :class:`~paranav.sim.trace.TraceRecord`
                per tick.
            -   outcome (:obj:`~paranav.sim.trace.ScenarioOutcome`): The result.

    Raises:
        ConfigValidationError: When the scenario is invalid.
    """
    cfg.validate()
    env = CorridorServo(config=cfg)
    obs, _ = env.reset()
    history = deque(maxlen=int(cfg.protection.max_dwell_ticks))
    trace = []
    min_gap = np.inf
    logger.debug(
        f"Running scenario with goal line {cfg.world.goal_line} m and "
        f"{cfg.max_ticks} ticks."
    )
    while True:
        decision = control(obs, cfg, history)
        action = np.array(
            [decision.protected.servo_angle, decision.applied.drive.speed_sign],
            dtype=np.float64,
        )
        next_obs, _, terminated, truncated, info = env.step(action)
        pose = info["pose"]
        trace.append(
            TraceRecord(
                tick=info["tick"],
                time=info["time"],
                x=pose.x,
                y=pose.y,
                heading=pose.heading,
                d1=float(obs[0]),
                d2=float(obs[1]),
                d3=float(obs[2]),
                d4=float(obs[3]),
                d5=float(obs[4]),
                d6=float(obs[5]),
                mu=decision.evidence.mu,
                lambda_=decision.evidence.lambda_,
                gce=decision.analysis.gce,
                gin=decision.analysis.gin,
                state_code=int(decision.analysis.state.code),
                commanded_angle=decision.commanded.servo_angle,
                protected_angle=decision.protected.servo_angle,
                pulse_width=info["pulse_width"],
                actual_theta=info["actual_angle"],
                drive=info["drive"],
            )
        )
        min_gap = min(min_gap, info["clearance"])
        obs = next_obs
        if terminated or truncated:
            break

    outcome = ScenarioOutcome(
        result=_result(info["clearance"], pose.x, cfg.world.goal_line),
        ticks_used=len(trace),
        min_wall_clearance=float(min_gap),
        final_pose=pose,
    )
    logger.debug(
        f"Scenario finished: {outcome.result.value} after {outcome.ticks_used} "
        "ticks."
    )
    env.close()
    return trace, outcome


def summarize(trace, cfg):
    """Recompute the outcome of a run from its trace.

    Args:
        trace (Sequence[TraceRecord]): The trace.
        cfg (ScenarioConfig): The scenario that produced it (for its geometry).

    Returns:
        ScenarioOutcome: The outcome.

    Raises:
        DomainError: When the trace is empty.
    """
    if len(trace) == 0:
        raise DomainError("Cannot summarize an empty trace.")
    gaps = [clearance(cfg.world, (r.x, r.y), cfg.body_radius) for r in trace]
    last = trace[-1]
    return ScenarioOutcome(
        result=_result(gaps[-1], last.x, cfg.world.goal_line),
        ticks_used=len(trace),
        min_wall_clearance=float(min(gaps)),
        final_pose=last.pose,
    )
