"""Scenario configuration: the value type and its JSON document form.

A scenario document mirrors :class:`ScenarioConfig` field for field. Every section
is optional and falls back to its defaults. Unknown keys and invalid values are
collected and reported together in one :class:`ConfigValidationError`.
"""
import json
from dataclasses import dataclass, field, fields

from paranav.common.exceptions import ConfigValidationError, DomainError
from paranav.common.utils import (
    friendly_list,
    raise_on_violations,
    verify_number_and_cast,
)
from paranav.core.controller import ActionEntry, ActionTable, Drive, ProtectionPolicy
from paranav.core.motor import MotorParameters
from paranav.core.paralogic import AnalysisThresholds, LogicalState
from paranav.core.pwm import PwmConfig, ServoCalibration
from paranav.core.world import (
    CorridorWorld,
    EvidenceMapping,
    RobotPose,
    UltrasonicArray,
    intersects,
    straight_corridor,
)


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything needed to run one deterministic scenario.

    Attributes:
        world (CorridorWorld): Corridor geometry.
        start (RobotPose): Initial pose.
        sensors (UltrasonicArray): The ultrasonic sensors.
        evidence (EvidenceMapping): Distance to evidence scaling.
        thresholds (AnalysisThresholds): Paranalyzer control values.
        action_table (ActionTable): Per-state steering actions.
        protection (ProtectionPolicy): Servo protection.
        motor (MotorParameters): Servo motor parameters.
        servo_kp (float): Servo position gain (V/rad).
        calibration (ServoCalibration): Angle to pulse-width map.
        calibration_name (str): Preset name or ``"custom"``.
        pwm (PwmConfig): Command signal configuration.
        forward_speed (float): Forward speed (m/s).
        reverse_speed (float): Reverse speed (m/s).
        wheelbase (float): Wheelbase (m).
        linkage_ratio (float): Steering angle per servo angle.
        body_radius (float): Radius of the robot body circle (m).
        dt (float): Control tick (s), one PWM period by default.
        motor_substeps (int): Motor integration substeps per tick.
        max_ticks (int): Tick budget.
        rng_seed (int): Reserved for noise models.
    """

    world: CorridorWorld = field(default_factory=straight_corridor)
    start: RobotPose = field(default_factory=RobotPose)
    sensors: UltrasonicArray = field(default_factory=UltrasonicArray)
    evidence: EvidenceMapping = field(default_factory=EvidenceMapping)
    thresholds: AnalysisThresholds = field(default_factory=AnalysisThresholds)
    action_table: ActionTable = field(default_factory=ActionTable)
    protection: ProtectionPolicy = field(default_factory=ProtectionPolicy)
    motor: MotorParameters = field(default_factory=MotorParameters)
    servo_kp: float = 16.0
    calibration: ServoCalibration = field(default_factory=ServoCalibration)
    calibration_name: str = "datasheet"
    pwm: PwmConfig = field(default_factory=PwmConfig)
    forward_speed: float = 0.5
    reverse_speed: float = 0.25
    wheelbase: float = 0.3
    linkage_ratio: float = 1.0 / 3.0
    body_radius: float = 0.15
    dt: float = 0.02
    motor_substeps: int = 20
    max_ticks: int = 5000
    rng_seed: int = 0

    def violations(self):
        """Returns the scalar and cross-section violations (empty when valid)."""
        violations = []
        for name in ("servo_kp", "forward_speed", "reverse_speed", "wheelbase", "dt"):
            if not getattr(self, name) > 0:
                violations.append(f"{name} must be > 0, got {getattr(self, name)}.")
        if not self.body_radius > 0:
            violations.append(f"body_radius must be > 0, got {self.body_radius}.")
        if not 0 < self.linkage_ratio < 1:
            violations.append(
                f"linkage_ratio must lie in (0, 1), got {self.linkage_ratio}."
            )
        for name in ("max_ticks", "motor_substeps"):
            value = getattr(self, name)
            if not (float(value).is_integer() and value >= 1):
                violations.append(f"{name} must be an integer >= 1, got {value}.")
        violations.extend(self.evidence.violations(max_range=self.sensors.max_range))
        violations.extend(self.calibration.violations(period=self.pwm.period))
        if not self.start.is_finite:
            violations.append("start pose must be finite.")
        elif not self.start.x < self.world.goal_line:
            violations.append(
                f"world.goal_line ({self.world.goal_line}) must lie beyond the start "
                f"(x={self.start.x})."
            )
        elif self.body_radius > 0 and intersects(
            self.world, (self.start.x, self.start.y), self.body_radius
        ):
            violations.append("start pose intersects the corridor geometry.")
        return violations

    def validate(self):
        """Raise :class:`ConfigValidationError` listing every violation."""
        raise_on_violations(self.violations())
        return self

    def mirrored(self):
        """ScenarioConfig: The scenario reflected across the ``y = 0`` axis."""
        return _replace(self, world=self.world.mirrored(), start=self.start.mirrored())


def _replace(cfg, **changes):
    values = {f.name: getattr(cfg, f.name) for f in fields(cfg)}
    values.update(changes)
    return ScenarioConfig(**values)


SECTION_FIELDS = {
    "world": ("walls", "obstacles", "goal_line"),
    "start": ("x", "y", "heading"),
    "sensors": ("bearings_deg", "mount_offsets", "max_range"),
    "evidence": ("d_free", "d_block"),
    "thresholds": ("vcve", "vcfa", "vcic", "vcpa"),
    "protection": ("angle_min", "angle_max", "max_dwell_ticks", "relief_step"),
    "motor": ("la", "ra", "kb", "ki", "j", "b", "tl", "v_max"),
    "pwm": ("period", "sample_rate"),
}
SECTION_TYPES = {
    "world": CorridorWorld,
    "start": RobotPose,
    "sensors": UltrasonicArray,
    "evidence": EvidenceMapping,
    "thresholds": AnalysisThresholds,
    "protection": ProtectionPolicy,
    "motor": MotorParameters,
    "pwm": PwmConfig,
}
SCALAR_KEYS = (
    "servo_kp",
    "forward_speed",
    "reverse_speed",
    "wheelbase",
    "linkage_ratio",
    "body_radius",
    "dt",
)
INTEGER_KEYS = ("motor_substeps", "max_ticks", "rng_seed")
TOP_LEVEL_KEYS = (
    tuple(SECTION_FIELDS) + ("action_table", "calibration") + SCALAR_KEYS + INTEGER_KEYS
)


class _Collector:
    """Accumulates violations while a document is parsed."""

    def __init__(self):
        self.violations = []

    def number(self, value, name):
        try:
            return verify_number_and_cast(value, name)
        except ConfigValidationError as e:
            self.violations.extend(e.violations)
            return None

    def integer(self, value, name):
        number = self.number(value, name)
        if number is None:
            return None
        if not number.is_integer():
            self.violations.append(f"'{name}' must be an integer, got {value!r}.")
            return None
        return int(number)

    def unknown_keys(self, data, allowed, where):
        unknown = sorted(set(data) - set(allowed))
        if unknown:
            self.violations.append(
                f"Unknown key{'s' if len(unknown) > 1 else ''} in {where}: "
                f"{friendly_list(unknown, apostrophes=True)}."
            )

    def mapping(self, data, where):
        if not isinstance(data, dict):
            self.violations.append(f"'{where}' must be an object, got {data!r}.")
            return None
        return data

    def build(self, cls, kwargs, where):
        try:
            return cls(**kwargs)
        except ConfigValidationError as e:
            self.violations.extend(e.violations)
        except (TypeError, ValueError) as e:
            self.violations.append(f"Invalid '{where}' section: {e}.")
        return None


def _points(collector, value, name, width):
    """Parse a list of fixed-width numeric tuples."""
    if not isinstance(value, (list, tuple)):
        collector.violations.append(f"'{name}' must be a list, got {value!r}.")
        return None
    parsed = []
    for index, item in enumerate(value):
        if not isinstance(item, (list, tuple)) or len(item) != width:
            collector.violations.append(
                f"'{name}[{index}]' must be a list of {width} numbers, got {item!r}."
            )
            return None
        parsed.append(
            tuple(collector.number(v, f"{name}[{index}]") for v in item)
        )
    return parsed


def _parse_world(collector, data):
    kwargs = {}
    if "walls" in data:
        walls = []
        raw = data["walls"]
        if not isinstance(raw, (list, tuple)):
            collector.violations.append(f"'world.walls' must be a list, got {raw!r}.")
            return None
        for index, segment in enumerate(raw):
            points = _points(collector, segment, f"world.walls[{index}]", 2)
            if points is None or len(points) != 2:
                collector.violations.append(
                    f"'world.walls[{index}]' must hold two [x, y] points."
                )
                return None
            walls.append(tuple(points))
        kwargs["walls"] = walls
    else:
        kwargs["walls"] = straight_corridor().walls
    if "obstacles" in data:
        kwargs["obstacles"] = _points(collector, data["obstacles"], "world.obstacles", 4)
    if "goal_line" in data:
        kwargs["goal_line"] = collector.number(data["goal_line"], "world.goal_line")
    if any(value is None for value in kwargs.values()) or collector.violations:
        return None
    return collector.build(CorridorWorld, kwargs, "world")


def _parse_sensors(collector, data):
    kwargs = {}
    for key in ("bearings_deg", "mount_offsets"):
        if key in data:
            value = data[key]
            if not isinstance(value, (list, tuple)):
                collector.violations.append(
                    f"'sensors.{key}' must be a list, got {value!r}."
                )
                return None
            kwargs[key] = tuple(
                collector.number(v, f"sensors.{key}[{i}]") for i, v in enumerate(value)
            )
    if "max_range" in data:
        kwargs["max_range"] = collector.number(data["max_range"], "sensors.max_range")
    if any(v is None for value in kwargs.values() for v in _flat(value)):
        return None
    return collector.build(UltrasonicArray, kwargs, "sensors")


def _flat(value):
    return value if isinstance(value, tuple) else (value,)


def _parse_action_table(collector, data):
    entries = {}
    for key, raw in data.items():
        try:
            state = LogicalState.from_any(key)
        except DomainError as e:
            collector.violations.append(f"action_table: {e}")
            continue
        raw = collector.mapping(raw, f"action_table.{key}")
        if raw is None:
            continue
        collector.unknown_keys(raw, ("magnitude", "drive"), f"action_table.{key}")
        default = ActionTable()[state]
        magnitude = (
            collector.number(raw["magnitude"], f"action_table.{key}.magnitude")
            if "magnitude" in raw
            else default.magnitude
        )
        drive = default.drive
        if "drive" in raw:
            try:
                drive = Drive(str(raw["drive"]).lower())
            except ValueError:
                collector.violations.append(
                    f"action_table.{key}.drive must be one of "
                    f"{friendly_list([d.value for d in Drive], apostrophes=True)}, "
                    f"got {raw['drive']!r}."
                )
        if magnitude is not None:
            entries[state] = ActionEntry(magnitude, drive)
    return collector.build(ActionTable, {"entries": entries}, "action_table")


def _parse_calibration(collector, data):
    if isinstance(data, str):
        try:
            return ServoCalibration.from_name(data), data.lower()
        except ConfigValidationError as e:
            collector.violations.extend(e.violations)
            return None, None
    data = collector.mapping(data, "calibration")
    if data is None:
        return None, None
    collector.unknown_keys(data, ("point_a", "point_b"), "calibration")
    kwargs = {}
    for key in ("point_a", "point_b"):
        if key not in data:
            collector.violations.append(f"calibration.{key} is required.")
            return None, None
        points = _points(collector, [data[key]], f"calibration.{key}", 2)
        if points is None or None in points[0]:
            return None, None
        kwargs[key] = points[0]
    return collector.build(ServoCalibration, kwargs, "calibration"), "custom"


def scenario_from_dict(data):
    """Build a validated :class:`ScenarioConfig` from a scenario document.

    Args:
        data (dict): The parsed JSON document.

    Returns:
        ScenarioConfig: The scenario.

    Raises:
        ConfigValidationError: Listing every violation found in the document.
    """
    collector = _Collector()
    if collector.mapping(data, "scenario") is None:
        raise ConfigValidationError(collector.violations)
    collector.unknown_keys(data, TOP_LEVEL_KEYS, "the scenario")

    kwargs = {}
    for section, keys in SECTION_FIELDS.items():
        if section not in data:
            continue
        raw = collector.mapping(data[section], section)
        if raw is None:
            continue
        collector.unknown_keys(raw, keys, f"'{section}'")
        if section == "world":
            value = _parse_world(collector, raw)
        elif section == "sensors":
            value = _parse_sensors(collector, raw)
        else:
            values = {}
            for key in keys:
                if key not in raw:
                    continue
                if key == "max_dwell_ticks":
                    values[key] = collector.integer(raw[key], f"{section}.{key}")
                else:
                    values[key] = collector.number(raw[key], f"{section}.{key}")
            value = (
                None
                if None in values.values()
                else collector.build(SECTION_TYPES[section], values, section)
            )
        if value is not None:
            kwargs[section] = value

    if "action_table" in data:
        raw = collector.mapping(data["action_table"], "action_table")
        if raw is not None:
            table = _parse_action_table(collector, raw)
            if table is not None:
                kwargs["action_table"] = table
    if "calibration" in data:
        calibration, name = _parse_calibration(collector, data["calibration"])
        if calibration is not None:
            kwargs["calibration"], kwargs["calibration_name"] = calibration, name
    for key in SCALAR_KEYS:
        if key in data:
            value = collector.number(data[key], key)
            if value is not None:
                kwargs[key] = value
    for key in INTEGER_KEYS:
        if key in data:
            value = collector.integer(data[key], key)
            if value is not None:
                kwargs[key] = value

    if collector.violations:
        raise ConfigValidationError(collector.violations)
    return ScenarioConfig(**kwargs).validate()


def validate_scenario(data):
    """Return every violation of a scenario document (empty when valid)."""
    try:
        scenario_from_dict(data)
    except ConfigValidationError as e:
        return e.violations
    return []


def load_scenario(path):
    """Load and validate a JSON scenario file.

    Args:
        path (Union[str, os.PathLike]): The scenario file.

    Returns:
        ScenarioConfig: The scenario.

    Raises:
        ConfigValidationError: When the file cannot be parsed or is invalid.
    """
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigValidationError(f"Could not read scenario '{path}': {e}.") from e
    return scenario_from_dict(data)


def scenario_to_dict(cfg):
    """Canonical JSON document of a scenario (accepted by :func:`scenario_from_dict`).

    Args:
        cfg (ScenarioConfig): The scenario.

    Returns:
        dict: The JSON-serialisable document.
    """
    document = {}
    for section, keys in SECTION_FIELDS.items():
        value = getattr(cfg, section)
        document[section] = {key: _jsonable(getattr(value, key)) for key in keys}
    document["action_table"] = {
        str(state.code): {"magnitude": entry.magnitude, "drive": entry.drive.value}
        for state, entry in sorted(cfg.action_table.entries.items())
    }
    document["calibration"] = (
        cfg.calibration_name
        if cfg.calibration_name != "custom"
        else {
            "point_a": list(cfg.calibration.point_a),
            "point_b": list(cfg.calibration.point_b),
        }
    )
    for key in SCALAR_KEYS + INTEGER_KEYS:
        document[key] = getattr(cfg, key)
    return document


def _jsonable(value):
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    return value
