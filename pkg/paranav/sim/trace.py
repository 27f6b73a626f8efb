"""Per-tick trace records, the scenario outcome and their file formats.

Traces are written as CSV with one header row and one row per tick. Floats are
rendered with 9 significant digits so identical runs give byte-identical files.
Outcomes are written as JSON documents.
"""
import csv
import json
import math
from dataclasses import astuple, dataclass, fields
from enum import Enum

from paranav.common.exceptions import DomainError
from paranav.core.controller import Drive
from paranav.core.world import RobotPose

TRACE_COLUMNS = (
    "tick",
    "time",
    "x",
    "y",
    "heading",
    "d1",
    "d2",
    "d3",
    "d4",
    "d5",
    "d6",
    "mu",
    "lambda",
    "gce",
    "gin",
    "state_code",
    "commanded_angle",
    "protected_angle",
    "pulse_width",
    "actual_theta",
    "drive",
)
FLOAT_FORMAT = ".9g"


@dataclass(frozen=True)
class TraceRecord:
    """One simulation tick.

    The pose columns hold the pose at the end of the tick. The distance and
    evidence columns hold the values the controller used during the tick.
    """

    tick: int
    time: float
    x: float
    y: float
    heading: float
    d1: float
    d2: float
    d3: float
    d4: float
    d5: float
    d6: float
    mu: float
    lambda_: float
    gce: float
    gin: float
    state_code: int
    commanded_angle: float
    protected_angle: float
    pulse_width: float
    actual_theta: float
    drive: Drive

    @property
    def pose(self):
        """RobotPose: The pose at the end of the tick."""
        return RobotPose(self.x, self.y, self.heading)

    @property
    def distances(self):
        """tuple: The six sensor distances."""
        return (self.d1, self.d2, self.d3, self.d4, self.d5, self.d6)

    @property
    def is_finite(self):
        """bool: Whether every numeric field is finite."""
        return all(math.isfinite(v) for v in astuple(self)[:-1])


class OutcomeResult(str, Enum):
    """How a scenario ended."""

    COMPLETED = "completed"
    COLLIDED = "collided"
    TIMEOUT = "timeout"

    @property
    def exit_code(self):
        """int: The command line exit code of the result."""
        return {
            OutcomeResult.COMPLETED: 0,
            OutcomeResult.COLLIDED: 3,
            OutcomeResult.TIMEOUT: 4,
        }[self]


@dataclass(frozen=True)
class ScenarioOutcome:
    """Summary of a scenario run.

    Attributes:
        result (OutcomeResult): Completed, collided or timeout.
        ticks_used (int): Number of simulated ticks.
        min_wall_clearance (float): Smallest body clearance over the run (m).
        final_pose (RobotPose): The pose after the last tick.
    """

    result: OutcomeResult
    ticks_used: int
    min_wall_clearance: float
    final_pose: RobotPose


def _format(value):
    if isinstance(value, Drive):
        return value.value
    if isinstance(value, int):
        return str(value)
    return format(float(value), FLOAT_FORMAT)


def trace_rows(trace):
    """Yield the formatted CSV rows of a trace, header first."""
    yield list(TRACE_COLUMNS)
    for record in trace:
        yield [_format(value) for value in astuple(record)]


def write_trace_csv(trace, target):
    """Write a trace as CSV.

    Args:
        trace (Sequence[TraceRecord]): The trace.
        target (Union[str, os.PathLike, io.TextIOBase]): A path or a text stream.
    """
    if hasattr(target, "write"):
        csv.writer(target, lineterminator="\n").writerows(trace_rows(trace))
        return
    with open(target, "w", newline="", encoding="utf-8") as f:
        csv.writer(f, lineterminator="\n").writerows(trace_rows(trace))


def _parse_row(row):
    values = []
    for f, raw in zip(fields(TraceRecord), row):
        if f.name in ("tick", "state_code"):
            values.append(int(raw))
        elif f.name == "drive":
            values.append(Drive(raw))
        else:
            values.append(float(raw))
    return TraceRecord(*values)


def read_trace_csv(source):
    """Read a trace written by :func:`write_trace_csv`.

    Args:
        source (Union[str, os.PathLike, io.TextIOBase]): A path or a text stream.

    Returns:
        list: The :class:`TraceRecord` rows.
    """
    if hasattr(source, "read"):
        return _read_rows(csv.reader(source))
    with open(source, newline="", encoding="utf-8") as f:
        return _read_rows(csv.reader(f))


def _read_rows(reader):
    header = next(reader, None)
    if header is None or tuple(header) != TRACE_COLUMNS:
        raise DomainError(f"Unexpected trace header {header!r}.")
    return [_parse_row(row) for row in reader]


def outcome_to_dict(outcome):
    """JSON document of a :class:`ScenarioOutcome`."""
    return {
        "result": outcome.result.value,
        "ticks_used": outcome.ticks_used,
        "min_wall_clearance": outcome.min_wall_clearance,
        "final_pose": {
            "x": outcome.final_pose.x,
            "y": outcome.final_pose.y,
            "heading": outcome.final_pose.heading,
        },
    }


def write_summary(outcome, target):
    """Write the outcome as a JSON document to a path or a text stream."""
    document = json.dumps(outcome_to_dict(outcome), indent=2) + "\n"
    if hasattr(target, "write"):
        target.write(document)
        return
    with open(target, "w", encoding="utf-8") as f:
        f.write(document)
