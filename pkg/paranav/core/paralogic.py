"""The Paraconsistent Annotated Evidential Logic Eτ engine (Paranalyzer).

A proposition ``p`` is annotated with a pair :math:`(\\mu, \\lambda)` where
:math:`\\mu` is the favorable and :math:`\\lambda` the contrary evidence degree.
From the annotation the degree of certainty and the degree of uncertainty are
derived:

.. math::

    G_{ce} = \\mu - \\lambda \\qquad G_{in} = \\mu + \\lambda - 1

The Paranalyzer partitions the :math:`(G_{ce}, G_{in})` square into four extreme
states (selected by the ``vcve``, ``vcfa``, ``vcic`` and ``vcpa`` thresholds) and
eight non-extreme (tending) states.
"""
import math
from dataclasses import dataclass
from enum import IntEnum

from paranav.common.exceptions import DomainError
from paranav.common.utils import raise_on_violations, verify_number_and_cast


class LogicalState(IntEnum):
    """The twelve Paranalyzer output states. The value is the state code."""

    TRUE = 1
    FALSE = 2
    INCONSISTENT = 3
    PARACOMPLETE = 4
    QUASI_TRUE_TENDING_INCONSISTENT = 5
    QUASI_INCONSISTENT_TENDING_TRUE = 6
    QUASI_TRUE_TENDING_PARACOMPLETE = 7
    QUASI_PARACOMPLETE_TENDING_TRUE = 8
    QUASI_FALSE_TENDING_PARACOMPLETE = 9
    QUASI_PARACOMPLETE_TENDING_FALSE = 10
    QUASI_FALSE_TENDING_INCONSISTENT = 11
    QUASI_INCONSISTENT_TENDING_FALSE = 12

    @property
    def code(self):
        """int: The numeric state code (1 to 12)."""
        return int(self)

    @property
    def label(self):
        """str: CamelCase state name, e.g. ``QuasiTrueTendingInconsistent``."""
        return "".join(part.capitalize() for part in self.name.split("_"))

    @property
    def description(self):
        """str: What the state means for the "Free Front" proposition."""
        return _DESCRIPTIONS[self]

    @property
    def is_extreme(self):
        """bool: Whether the state is one of the four extreme states."""
        return self.value <= 4

    @property
    def mirrored(self):
        """LogicalState: The state reached when favorable and contrary evidence are
        swapped (with symmetric thresholds).
        """
        return LogicalState(_SWAP_INVOLUTION[self.value])

    @classmethod
    def from_any(cls, value):
        """Look up a state by code (int or numeric string), member name or label.

        Args:
            value (Union[int, str, LogicalState]): The state identifier.

        Returns:
            LogicalState: The matching state.

        Raises:
            DomainError: When no state matches.
        """
        if isinstance(value, LogicalState):
            return value
        if isinstance(value, str):
            key = value.strip()
            if key.isdigit():
                value = int(key)
            else:
                for state in cls:
                    if key.upper() == state.name or key == state.label:
                        return state
                raise DomainError(f"Unknown logical state '{value}'.")
        try:
            return cls(value)
        except ValueError as e:
            raise DomainError(f"Unknown logical state code '{value}'.") from e


_DESCRIPTIONS = {
    LogicalState.TRUE: "True - the front is free, won't hit.",
    LogicalState.FALSE: "False - will hit, stop and reverse while turning.",
    LogicalState.INCONSISTENT: "Inconsistent - information is contradictory.",
    LogicalState.PARACOMPLETE: "Paracomplete - information is not sufficient to "
    "make a decision.",
    LogicalState.QUASI_TRUE_TENDING_INCONSISTENT: "Almost true tending to "
    "inconsistent - turn, more than in the inconsistent state.",
    LogicalState.QUASI_INCONSISTENT_TENDING_TRUE: "Inconsistent tending to true - "
    "turn, obstacle side still open.",
    LogicalState.QUASI_TRUE_TENDING_PARACOMPLETE: "Almost true tending to "
    "paracomplete - turn slightly.",
    LogicalState.QUASI_PARACOMPLETE_TENDING_TRUE: "Paracomplete tending to true - "
    "turn, obstacle side open.",
    LogicalState.QUASI_FALSE_TENDING_PARACOMPLETE: "Almost false tending to "
    "paracomplete - stop, almost hitting.",
    LogicalState.QUASI_PARACOMPLETE_TENDING_FALSE: "Paracomplete tending to false - "
    "stop and turn a little.",
    LogicalState.QUASI_FALSE_TENDING_INCONSISTENT: "Almost false tending to "
    "inconsistent - stop and turn a lot, obstacle too close.",
    LogicalState.QUASI_INCONSISTENT_TENDING_FALSE: "Inconsistent tending to false - "
    "stop and turn slightly.",
}

_SWAP_INVOLUTION = {1: 2, 2: 1, 3: 3, 4: 4, 5: 11, 11: 5, 6: 12, 12: 6, 7: 9, 9: 7}
_SWAP_INVOLUTION.update({8: 10, 10: 8})


@dataclass(frozen=True)
class Evidence:
    """Annotation :math:`(\\mu, \\lambda)` of a proposition.

    Attributes:
        mu (float): Favorable evidence degree in ``[0, 1]``.
        lambda_ (float): Contrary evidence degree in ``[0, 1]``.
    """

    mu: float
    lambda_: float

    def __post_init__(self):
        for name in ("mu", "lambda_"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and 0.0 <= value <= 1.0):
                raise DomainError(
                    f"Evidence degree '{name}' must lie in [0, 1], got {value!r}."
                )

    @classmethod
    def from_percent(cls, mu, lambda_):
        """Create an annotation from percent-scaled degrees (0 to 100)."""
        return cls(normalize_percent(mu), normalize_percent(lambda_))

    def swapped(self):
        """Evidence: The annotation with favorable and contrary degrees exchanged."""
        return Evidence(self.lambda_, self.mu)


@dataclass(frozen=True)
class AnalysisThresholds:
    """Limit values of the extreme states.

    Attributes:
        vcve (float): Certainty (veracity) control value in ``(0, 1]``.
        vcfa (float): Falsity control value in ``[-1, 0)``.
        vcic (float): Inconsistency control value in ``(0, 1]``.
        vcpa (float): Paracompleteness control value in ``[-1, 0)``.
    """

    vcve: float = 0.5
    vcfa: float = -0.5
    vcic: float = 0.5
    vcpa: float = -0.5

    def __post_init__(self):
        raise_on_violations(self.violations())

    def violations(self):
        """Returns the list of invariant violations (empty when valid)."""
        violations = []
        for name in ("vcve", "vcic"):
            value = getattr(self, name)
            if not 0.0 < value <= 1.0:
                violations.append(f"thresholds.{name} must lie in (0, 1], got {value}.")
        for name in ("vcfa", "vcpa"):
            value = getattr(self, name)
            if not -1.0 <= value < 0.0:
                violations.append(
                    f"thresholds.{name} must lie in [-1, 0), got {value}."
                )
        return violations

    @property
    def symmetric(self):
        """bool: Whether ``vcve == -vcfa`` and ``vcic == -vcpa``."""
        return self.vcve == -self.vcfa and self.vcic == -self.vcpa

    @classmethod
    def from_sequence(cls, values):
        """Parse thresholds from a ``"vcve,vcfa,vcic,vcpa"`` string or a sequence.

        Args:
            values (Union[str, Sequence[float]]): The four threshold values.

        Returns:
            AnalysisThresholds: The parsed thresholds.
        """
        if isinstance(values, str):
            values = [item for item in values.split(",") if item.strip()]
        if len(values) != 4:
            raise DomainError(
                f"Expected four thresholds (vcve, vcfa, vcic, vcpa), got {values!r}."
            )
        names = ("vcve", "vcfa", "vcic", "vcpa")
        return cls(
            *(verify_number_and_cast(v, name) for v, name in zip(values, names))
        )


@dataclass(frozen=True)
class AnnotationAnalysis:
    """Result of the Paranalyzer for one annotation.

    Attributes:
        gce (float): Degree of certainty in ``[-1, 1]``.
        gin (float): Degree of uncertainty in ``[-1, 1]``.
        state (LogicalState): The resulting logical state.
    """

    gce: float
    gin: float
    state: LogicalState

    @property
    def module_gce(self):
        """float: Absolute value of the degree of certainty."""
        return abs(self.gce)

    @property
    def module_gin(self):
        """float: Absolute value of the degree of uncertainty."""
        return abs(self.gin)


def normalize_percent(raw):
    """Convert a percent-scaled degree (0 to 100) to the unit interval.

    Args:
        raw (float): The percentage.

    Returns:
        float: ``raw / 100``.

    Raises:
        DomainError: When ``raw`` lies outside ``[0, 100]``.
    """
    if not (isinstance(raw, (int, float)) and math.isfinite(raw) and 0 <= raw <= 100):
        raise DomainError(f"Percent value must lie in [0, 100], got {raw!r}.")
    return raw / 100


def certainty_degree(e):
    """Degree of certainty :math:`G_{ce} = \\mu - \\lambda`."""
    return e.mu - e.lambda_


def uncertainty_degree(e):
    """Degree of uncertainty :math:`G_{in} = \\mu + \\lambda - 1`."""
    return e.mu + e.lambda_ - 1


def classify(e, t=None):
    """Run the Paranalyzer on an annotation.

    The extreme states are tested first (certainty, falsity, inconsistency,
    paracompleteness). The remaining points are assigned by the quadrant of
    :math:`(G_{ce}, G_{in})` and by comparing :math:`|G_{ce}|` with
    :math:`|G_{in}|`. Equalities belong to the first listed region.

    Args:
        e (Evidence): The annotation.
        t (AnalysisThresholds, optional): The control values. Defaults to
            :class:`AnalysisThresholds` defaults.

    Returns:
        AnnotationAnalysis: Degrees and logical state.
    """
    t = AnalysisThresholds() if t is None else t
    gce = certainty_degree(e)
    gin = uncertainty_degree(e)

    # Extreme states.
    if gce >= t.vcve:
        state = LogicalState.TRUE
    elif gce <= t.vcfa:
        state = LogicalState.FALSE
    elif gin >= t.vcic:
        state = LogicalState.INCONSISTENT
    elif gin <= t.vcpa:
        state = LogicalState.PARACOMPLETE

    # Non-extreme states.
    elif gce >= 0 and gin >= 0:
        state = (
            LogicalState.QUASI_TRUE_TENDING_INCONSISTENT
            if gce >= gin
            else LogicalState.QUASI_INCONSISTENT_TENDING_TRUE
        )
    elif gce >= 0:
        state = (
            LogicalState.QUASI_TRUE_TENDING_PARACOMPLETE
            if gce >= -gin
            else LogicalState.QUASI_PARACOMPLETE_TENDING_TRUE
        )
    elif gin < 0:
        state = (
            LogicalState.QUASI_FALSE_TENDING_PARACOMPLETE
            if -gce >= -gin
            else LogicalState.QUASI_PARACOMPLETE_TENDING_FALSE
        )
    else:
        state = (
            LogicalState.QUASI_FALSE_TENDING_INCONSISTENT
            if -gce >= gin
            else LogicalState.QUASI_INCONSISTENT_TENDING_FALSE
        )
    return AnnotationAnalysis(gce=gce, gin=gin, state=state)


def paranalyzer(mi, lambda_, t=None):
    """Percent-scaled Paranalyzer entry point.

    Both evidence degrees are given in percent, normalized to the unit interval and
    classified.

    Args:
        mi (float): Favorable evidence in percent.
        lambda_ (float): Contrary evidence in percent.
        t (AnalysisThresholds, optional): The control values.

    Returns:
        LogicalState: The resulting state.
    """
    return classify(Evidence.from_percent(mi, lambda_), t).state
