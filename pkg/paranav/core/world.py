"""Corridor geometry, robot pose and ultrasonic ray sensing.

The world is a set of wall segments and axis-aligned rectangular obstacles. The
robot carries six ultrasonic sensors which are modelled as single rays. The sensor
readings are turned into the annotation of the "Free Front" proposition.

Sensor order: front, front-left, front-right, left, right, rear.
"""
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from paranav.common.utils import raise_on_violations
from paranav.core.paralogic import Evidence

FRONT, FRONT_LEFT, FRONT_RIGHT, LEFT, RIGHT, REAR = range(6)
SENSOR_NAMES = ("front", "front_left", "front_right", "left", "right", "rear")
_PARALLEL_EPS = 1e-12


@dataclass(frozen=True)
class CorridorWorld:
    """Static corridor geometry.

    Attributes:
        walls (tuple): Wall segments ``((x1, y1), (x2, y2))`` (m).
        obstacles (tuple): Rectangles ``(xmin, ymin, xmax, ymax)`` (m).
        goal_line (float): x-coordinate marking the end of the corridor (m).
    """

    walls: tuple
    obstacles: tuple = ()
    goal_line: float = 20.0

    def __post_init__(self):
        object.__setattr__(
            self,
            "walls",
            tuple(
                (tuple(map(float, a)), tuple(map(float, b))) for a, b in self.walls
            ),
        )
        object.__setattr__(
            self, "obstacles", tuple(tuple(map(float, r)) for r in self.obstacles)
        )
        raise_on_violations(self.violations())

    def violations(self):
        """Returns the list of invariant violations (empty when valid)."""
        violations = []
        if len(self.walls) < 2:
            violations.append(
                f"world.walls needs at least 2 segments, got {len(self.walls)}."
            )
        for index, (a, b) in enumerate(self.walls):
            if a == b:
                violations.append(f"world.walls[{index}] has zero length.")
        for index, (xmin, ymin, xmax, ymax) in enumerate(self.obstacles):
            if not (xmin < xmax and ymin < ymax):
                violations.append(
                    f"world.obstacles[{index}] must satisfy xmin < xmax and ymin < "
                    "ymax."
                )
        return violations

    @cached_property
    def segments(self):
        """tuple: All wall segments plus the four edges of every obstacle."""
        edges = []
        for xmin, ymin, xmax, ymax in self.obstacles:
            edges.extend(
                [
                    ((xmin, ymin), (xmax, ymin)),
                    ((xmax, ymin), (xmax, ymax)),
                    ((xmax, ymax), (xmin, ymax)),
                    ((xmin, ymax), (xmin, ymin)),
                ]
            )
        return self.walls + tuple(edges)

    def mirrored(self):
        """CorridorWorld: The world reflected across the ``y = 0`` axis."""
        return CorridorWorld(
            walls=tuple(((a[0], -a[1]), (b[0], -b[1])) for a, b in self.walls),
            obstacles=tuple(
                (xmin, -ymax, xmax, -ymin) for xmin, ymin, xmax, ymax in self.obstacles
            ),
            goal_line=self.goal_line,
        )


@dataclass(frozen=True)
class RobotPose:
    """Robot position (m) and heading (rad, counterclockwise from +x)."""

    x: float = 0.0
    y: float = 0.0
    heading: float = 0.0

    def mirrored(self):
        """RobotPose: The pose reflected across the ``y = 0`` axis."""
        return RobotPose(self.x, -self.y, -self.heading)

    @property
    def is_finite(self):
        """bool: Whether all pose values are finite."""
        return all(math.isfinite(v) for v in (self.x, self.y, self.heading))


@dataclass(frozen=True)
class UltrasonicArray:
    """The six ultrasonic sensors.

    Attributes:
        bearings_deg (tuple): Sensor bearing relative to the heading (deg).
        mount_offsets (tuple): Distance of the sensor from the robot centre along
            its bearing (m).
        max_range (float): Maximum measurable distance (m).
    """

    bearings_deg: tuple = (0.0, 30.0, -30.0, 90.0, -90.0, 180.0)
    mount_offsets: tuple = (0.0,) * 6
    max_range: float = 3.0

    def __post_init__(self):
        object.__setattr__(self, "bearings_deg", tuple(map(float, self.bearings_deg)))
        object.__setattr__(
            self, "mount_offsets", tuple(map(float, self.mount_offsets))
        )
        raise_on_violations(self.violations())

    def violations(self):
        """Returns the list of invariant violations (empty when valid)."""
        violations = []
        if len(self.bearings_deg) != 6 or len(self.mount_offsets) != 6:
            violations.append(
                "sensors needs exactly 6 bearings and 6 mount offsets, got "
                f"{len(self.bearings_deg)} and {len(self.mount_offsets)}."
            )
        if any(offset < 0 for offset in self.mount_offsets):
            violations.append("sensors.mount_offsets must be >= 0.")
        if not self.max_range > 0:
            violations.append(f"sensors.max_range must be > 0, got {self.max_range}.")
        return violations

    @property
    def bearings(self):
        """tuple: Sensor bearings in radians."""
        return tuple(math.radians(b) for b in self.bearings_deg)


@dataclass(frozen=True)
class EvidenceMapping:
    """Distances that scale the sensor readings into evidence degrees.

    Attributes:
        d_free (float): Front distance at which the front counts as fully free (m).
        d_block (float): Distance below which a reading counts as blocking (m). It
            is used by the rear reverse-safety check.
    """

    d_free: float = 2.0
    d_block: float = 0.25

    def __post_init__(self):
        raise_on_violations(self.violations())

    def violations(self, max_range=None):
        """Returns the list of invariant violations (empty when valid)."""
        violations = []
        if not 0 < self.d_block < self.d_free:
            violations.append(
                "evidence must satisfy 0 < d_block < d_free, got "
                f"d_block={self.d_block} and d_free={self.d_free}."
            )
        if max_range is not None and not self.d_free <= max_range:
            violations.append(
                f"evidence.d_free ({self.d_free}) must not exceed the sensor range "
                f"({max_range})."
            )
        return violations


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def _ray_segment(ox, oy, dx, dy, segment):
    """Distance along the ray to a segment or ``None`` when missed."""
    (ax, ay), (bx, by) = segment
    ex, ey = bx - ax, by - ay
    denom = _cross(dx, dy, ex, ey)
    if abs(denom) < _PARALLEL_EPS:
        return None
    wx, wy = ax - ox, ay - oy
    t = _cross(wx, wy, ex, ey) / denom
    s = _cross(wx, wy, dx, dy) / denom
    if t >= 0.0 and 0.0 <= s <= 1.0:
        return t
    return None


def raycast(w, origin, direction, max_range):
    """Distance to the nearest geometry along a ray.

    Args:
        w (CorridorWorld): The world.
        origin (tuple): Ray origin ``(x, y)`` (m).
        direction (tuple): Unit direction ``(dx, dy)``.
        max_range (float): Range cap (m).

    Returns:
        float: Distance to the first hit, capped at ``max_range``.
    """
    ox, oy = origin
    dx, dy = direction
    distance = max_range
    for segment in w.segments:
        hit = _ray_segment(ox, oy, dx, dy, segment)
        if hit is not None and hit < distance:
            distance = hit
    return float(distance)


def sense(w, p, a=None):
    """Read the six ultrasonic sensors.

    Args:
        w (CorridorWorld): The world.
        p (RobotPose): The robot pose.
        a (UltrasonicArray, optional): The sensor array. Defaults to the default
            :class:`UltrasonicArray`.

    Returns:
        numpy.ndarray: The six distances (m).
    """
    a = UltrasonicArray() if a is None else a
    distances = np.empty(6)
    for index, (bearing, offset) in enumerate(zip(a.bearings, a.mount_offsets)):
        angle = p.heading + bearing
        dx, dy = math.cos(angle), math.sin(angle)
        origin = (p.x + offset * dx, p.y + offset * dy)
        distances[index] = raycast(w, origin, (dx, dy), a.max_range)
    return distances


def evidence_from_distances(d, m=None, a=None):
    """Annotation of the "Free Front" proposition from the sensor readings.

    The favorable degree comes from the front sensor, the contrary degree from the
    closer of the two front diagonal sensors. Both sources are independent so all
    four lattice corners can occur.

    Args:
        d (Sequence[float]): The six distances (m).
        m (EvidenceMapping, optional): The distance scaling.
        a (UltrasonicArray, optional): The sensor array (used for its range).

    Returns:
        Evidence: The annotation.
    """
    m = EvidenceMapping() if m is None else m
    a = UltrasonicArray() if a is None else a
    front = min(max(d[FRONT], 0.0), a.max_range)
    diagonal = min(max(min(d[FRONT_LEFT], d[FRONT_RIGHT]), 0.0), a.max_range)
    mu = min(max(front / m.d_free, 0.0), 1.0)
    lambda_ = min(max(1.0 - diagonal / m.d_free, 0.0), 1.0)
    return Evidence(mu, lambda_)


def side_openness(d):
    """Signed openness of the sides (positive when the left is more open).

    Args:
        d (Sequence[float]): The six distances (m).

    Returns:
        float: ``(left + front_left) / 2 - (right + front_right) / 2`` (m).
    """
    return (d[LEFT] + d[FRONT_LEFT]) / 2.0 - (d[RIGHT] + d[FRONT_RIGHT]) / 2.0


def _point_segment_distance(px, py, segment):
    (ax, ay), (bx, by) = segment
    ex, ey = bx - ax, by - ay
    length_sq = ex * ex + ey * ey
    u = ((px - ax) * ex + (py - ay) * ey) / length_sq
    u = min(max(u, 0.0), 1.0)
    return math.hypot(px - (ax + u * ex), py - (ay + u * ey))


def clearance(w, point, radius):
    """Signed gap between a robot body circle and the nearest geometry.

    Args:
        w (CorridorWorld): The world.
        point (tuple): Circle centre ``(x, y)`` (m).
        radius (float): Body radius (m).

    Returns:
        float: Gap (m). Zero or negative when the circle touches or intersects the
        geometry.
    """
    px, py = point
    inside = any(
        xmin < px < xmax and ymin < py < ymax for xmin, ymin, xmax, ymax in w.obstacles
    )
    nearest = min(_point_segment_distance(px, py, s) for s in w.segments)
    return (-nearest if inside else nearest) - radius


def intersects(w, point, radius):
    """bool: Whether a body circle touches or intersects the geometry."""
    return clearance(w, point, radius) <= 0.0


def straight_corridor(length=20.0, width=1.5, obstacles=(), goal_line=None, start_x=0.0):
    """Build a straight corridor along +x centred on ``y = 0``.

    Args:
        length (float, optional): Corridor length (m). Defaults to ``20``.
        width (float, optional): Corridor width (m). Defaults to ``1.5``.
        obstacles (tuple, optional): Obstacle rectangles.
        goal_line (float, optional): Goal line; defaults to the corridor end.
        start_x (float, optional): x of the corridor entry. Defaults to ``0``.

    Returns:
        CorridorWorld: The corridor.
    """
    half = width / 2.0
    end = start_x + length
    return CorridorWorld(
        walls=(
            ((start_x - 5.0, half), (end + 5.0, half)),
            ((start_x - 5.0, -half), (end + 5.0, -half)),
        ),
        obstacles=tuple(obstacles),
        goal_line=end if goal_line is None else goal_line,
    )


def dead_end_corridor(length=5.0, width=1.5, goal_line=None):
    """Build a straight corridor that is closed by a wall at ``x = length``.

    The goal line lies behind the end wall so the corridor cannot be completed.
    """
    corridor = straight_corridor(length=length, width=width)
    half = width / 2.0
    return CorridorWorld(
        walls=corridor.walls + (((length, -half), (length, half)),),
        goal_line=length + 1.0 if goal_line is None else goal_line,
    )

