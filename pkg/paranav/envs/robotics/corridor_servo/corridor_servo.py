"""The CorridorServo gymnasium environment."""
import math

import gymnasium as gym
import matplotlib.pyplot as plt
import numpy as np
from gymnasium import logger, spaces

from paranav.core.controller import Drive
from paranav.core.motor import MotorState, servo_track
from paranav.core.pwm import angle_to_pulse, pulse_to_angle
from paranav.core.world import clearance, sense
from paranav.sim.config import ScenarioConfig, scenario_from_dict
from paranav.sim.kinematics import kinematics_step, steering_angle

EPISODES = 1  # Number of env episodes to run when __main__ is called.


class CorridorServo(gym.Env):
    """Corridor robot steered by a PWM commanded DC servo.

    .. note::
        The environment is fully deterministic. The ``seed`` passed to
        :meth:`reset` is accepted for API compatibility only.

    Description:
        A terrestrial mobile robot drives through a corridor. Every step the agent
        commands a servo angle and a drive mode. The angle is converted into a PWM
        pulse width through the servo calibration, the servo reads the pulse back as
        a target angle and its DC motor tracks it with a position feedback loop. The
        actual servo angle steers the front wheel of a bicycle kinematic model.

    Observation:
        **Type**: Box(6)

        +-----+-------------------------------+-----+-----------+
        | Num | Observation                   | Min | Max       |
        +=====+===============================+=====+===========+
        | 0   | Front distance                | 0   | max_range |
        +-----+-------------------------------+-----+-----------+
        | 1   | Front-left (+30°) distance    | 0   | max_range |
        +-----+-------------------------------+-----+-----------+
        | 2   | Front-right (-30°) distance   | 0   | max_range |
        +-----+-------------------------------+-----+-----------+
        | 3   | Left distance                 | 0   | max_range |
        +-----+-------------------------------+-----+-----------+
        | 4   | Right distance                | 0   | max_range |
        +-----+-------------------------------+-----+-----------+
        | 5   | Rear distance                 | 0   | max_range |
        +-----+-------------------------------+-----+-----------+

    Actions:
        **Type**: Box(2)

        +-----+-----------------------------------------------+------+------+
        | Num | Action                                        | Min  | Max  |
        +=====+===============================================+======+======+
        | 0   | Servo angle command (deg, 90 is straight)     | 0    | 180  |
        +-----+-----------------------------------------------+------+------+
        | 1   || Drive sign (> 0.5 forward, < -0.5 reverse,  | -1   | 1    |
        |     || stop otherwise)                             |      |      |
        +-----+-----------------------------------------------+------+------+

    Cost:
        A proximity cost that grows when the robot body approaches the geometry:

        .. math::

            cost = \\max(0, 1 - c / d_{free})^2

        where :math:`c` is the clearance between the body circle and the nearest
        wall or obstacle. The cost is clipped to ``[0, 1]``.

    Starting State:
        The start pose of the scenario with the servo centred and the motor at rest.

    Episode Termination:
        -   The robot body touches the geometry (collided).
        -   The robot crosses the goal line (completed).
        -   The episode is truncated when the scenario tick budget is used up.

    How to use:
        .. code-block:: python

            import paranav
            import gymnasium as gym
            env = gym.make("CorridorServo-v1")

        The ``config`` argument accepts a :class:`~paranav.sim.config.ScenarioConfig`
        or a scenario document (``dict``).

    Attributes:
        config (ScenarioConfig): The scenario.
        pose (RobotPose): The current robot pose.
        motor_state (MotorState): The current servo motor state.
        ticks (int): Number of steps taken since the last reset.
        t (float): The simulated time.
        dt (float): The control tick. Also available as :attr:`.tau`.
    """  # noqa: E501

    metadata = {"render_modes": [], "render_fps": 50}
    instances = 0  # Number of instances created.

    def __init__(self, render_mode=None, config=None, clip_action=True):
        """Initialise a new CorridorServo environment instance.

        Args:
            render_mode (str, optional): The render mode you want to use. Defaults to
                ``None``. Not used in this environment.
            config (Union[ScenarioConfig, dict], optional): The scenario. Defaults to
                the default :class:`~paranav.sim.config.ScenarioConfig`.
            clip_action (bool, optional): Whether the actions should be clipped if
                they are greater than the set action limit. Defaults to ``True``.
        """
        super().__init__()
        if config is None:
            config = ScenarioConfig().validate()
        elif isinstance(config, dict):
            config = scenario_from_dict(config)
        else:
            config.validate()
        self.config = config
        self.render_mode = render_mode
        self._clip_action = clip_action
        self._action_clip_warning = False

        self.dt = config.dt
        self._substep = config.dt / int(config.motor_substeps)
        self.observation_space = spaces.Box(
            low=0.0, high=config.sensors.max_range, shape=(6,), dtype=np.float64
        )
        self.action_space = spaces.Box(
            low=np.array([0.0, -1.0]), high=np.array([180.0, 1.0]), dtype=np.float64
        )
        self.reward_range = (0.0, 1.0)

        self.pose = None
        self.motor_state = None
        self.ticks = 0
        self.t = 0.0
        self.steps_beyond_terminated = None

        # Print vectorization debug info.
        self.__class__.instances += 1
        self.instance_id = self.__class__.instances
        logger.debug(f"CorridorServo instance '{self.instance_id}' created.")

    @property
    def actual_angle(self):
        """float: The actual servo angle (deg, 90 is straight)."""
        return 90.0 + math.degrees(self.motor_state.theta)

    def cost(self, gap):
        """Returns the proximity cost for a body clearance.

        Args:
            gap (float): Clearance between the body and the geometry (m).

        Returns:
            float: The cost in ``[0, 1]``.
        """
        return float(
            np.clip(np.square(max(0.0, 1.0 - gap / self.config.evidence.d_free)), 0, 1)
        )

    def step(self, action):
        """Take step into the environment.

        Args:
            action (numpy.ndarray): Servo angle command (deg) and drive sign.

        Returns:
            (tuple): tuple containing:

                -   obs (:obj:`np.ndarray`): The six sensor distances.
                -   cost (:obj:`float`): Proximity cost of the new pose.
                -   terminated (:obj:`bool`): Whether the robot collided or reached
                    the goal line.
                -   truncated (:obj:`bool`): Whether the tick budget is used up.
                -   info (:obj:`dict`): Additional information about the step.
        """
        action = np.asarray(action, dtype=np.float64)
        if self._clip_action:
            # Throw warning if clipped and not already thrown.
            if not self.action_space.contains(action) and not self._action_clip_warning:
                logger.warn(
                    f"Action '{action}' was clipped as it is not in the action_space "
                    f"'high: {self.action_space.high}, low: {self.action_space.low}'."
                )
                self._action_clip_warning = True
            angle, drive_sign = np.clip(
                action, self.action_space.low, self.action_space.high
            )
        else:
            assert self.action_space.contains(
                action
            ), f"{action!r} ({type(action)}) invalid"
            angle, drive_sign = action
        assert self.pose is not None, "Call reset before using step method."
        cfg = self.config

        # The servo reads its target back from the commanded pulse width.
        pulse_width = angle_to_pulse(float(angle), cfg.calibration)
        target_angle = pulse_to_angle(pulse_width, cfg.calibration)
        target_theta = math.radians(target_angle - 90.0)
        for _ in range(int(cfg.motor_substeps)):
            self.motor_state = servo_track(
                self.motor_state, cfg.motor, target_theta, cfg.servo_kp, self._substep
            )

        # Move the robot with the actual servo angle.
        drive = Drive.from_sign(float(drive_sign))
        speed = {
            Drive.FORWARD: cfg.forward_speed,
            Drive.STOP: 0.0,
            Drive.REVERSE: -cfg.reverse_speed,
        }[drive]
        self.pose = kinematics_step(
            self.pose,
            steering_angle(self.motor_state.theta, cfg.linkage_ratio),
            speed,
            cfg.wheelbase,
            cfg.dt,
        )
        self.ticks += 1
        self.t = self.ticks * cfg.dt

        gap = clearance(cfg.world, (self.pose.x, self.pose.y), cfg.body_radius)
        collided = gap <= 0.0
        completed = not collided and self.pose.x >= cfg.world.goal_line
        terminated = collided or completed
        truncated = not terminated and self.ticks >= int(cfg.max_ticks)
        cost = self.cost(gap)

        if terminated:
            if self.steps_beyond_terminated is None:
                self.steps_beyond_terminated = 0
                logger.debug(
                    f"CorridorServo '{self.instance_id}' "
                    f"{'collided' if collided else 'completed'} at tick {self.ticks}."
                )
            else:
                if self.steps_beyond_terminated == 0:
                    logger.warn(
                        "You are calling 'step()' even though this "
                        "environment has already returned terminated = True. You "
                        "should always call 'reset()' once you receive 'terminated = "
                        "True' -- any further steps are undefined behaviour."
                    )
                self.steps_beyond_terminated += 1

        obs = sense(cfg.world, self.pose, cfg.sensors)
        info_dict = dict(
            pose=self.pose,
            pulse_width=pulse_width,
            target_angle=target_angle,
            actual_angle=self.actual_angle,
            drive=drive,
            clearance=gap,
            collided=collided,
            completed=completed,
            tick=self.ticks,
            time=self.t,
        )
        return obs, cost, terminated, truncated, info_dict

    def reset(self, seed=None, options=None):
        """Reset gymnasium environment.

        Args:
            seed (int, optional): A random seed for the environment. Not used, the
                environment is deterministic.
            options (dict, optional): May hold a ``start`` pose that replaces the
                scenario start pose. By default ``None``.

        Returns:
            (tuple): tuple containing:

                -   obs (:obj:`numpy.ndarray`): Initial sensor distances.
                -   info (:obj:`dict`): Dictionary containing additional information.
        """
        super().reset(seed=seed)
        self.pose = (
            options["start"]
            if options is not None and "start" in options
            else self.config.start
        )
        self.motor_state = MotorState()
        self.ticks = 0
        self.t = 0.0
        self.steps_beyond_terminated = None
        gap = clearance(
            self.config.world, (self.pose.x, self.pose.y), self.config.body_radius
        )
        obs = sense(self.config.world, self.pose, self.config.sensors)
        return obs, dict(pose=self.pose, actual_angle=self.actual_angle, clearance=gap)

    def render(self, mode="human"):
        """Render one frame of the environment.

        Raises:
            NotImplementedError: Traces are plot-ready CSV files, the environment
                itself is not rendered.
        """
        raise NotImplementedError(
            "No render method was implemented for the CorridorServo environment."
        )

    @property
    def tau(self):
        """Alias for the environment step size."""
        return self.dt

    @property
    def physics_time(self):
        """Returns the physics time. Alias for :attr:`.t`."""
        return self.t


if __name__ == "__main__":
    from paranav.core.world import straight_corridor
    from paranav.sim.runner import run_scenario

    print("Setting up 'CorridorServo' environment.")
    cfg = ScenarioConfig(
        world=straight_corridor(length=10.0, obstacles=[(4.0, 0.2, 4.6, 0.75)])
    )

    print(f"\nRunning '{EPISODES}' Paranalyzer episode(s)...\n")
    trace, outcome = run_scenario(cfg)
    print(f"Outcome: {outcome.result.value} after {outcome.ticks_used} ticks.")

    print("\nPlotting episode data...")
    fig, (ax_path, ax_servo) = plt.subplots(2, 1)
    for (ax_, ay_), (bx_, by_) in cfg.world.segments:
        ax_path.plot([ax_, bx_], [ay_, by_], color="black")
    ax_path.plot([r.x for r in trace], [r.y for r in trace], label="Robot path")
    ax_path.set_aspect("equal")
    ax_path.set_xlim(-0.5, cfg.world.goal_line + 0.5)
    ax_path.legend()
    t = [r.time for r in trace]
    ax_servo.plot(t, [r.protected_angle for r in trace], label="Command")
    ax_servo.plot(t, [r.actual_theta for r in trace], label="Actual servo angle")
    ax_servo.set_xlabel("Time (s)")
    ax_servo.set_ylabel("Angle (deg)")
    ax_servo.legend()
    plt.show()

    print("\nDone")
