"""Utility functions that are used in multiple paranav modules."""
import math

from gymnasium.utils import colorize as gym_colorize

from .exceptions import ConfigValidationError


def colorize(string, color, bold=False, highlight=False):
    """Colorize a string.

    .. seealso::
        This function wraps the :meth:`gym.utils.colorize` function to make sure that it
        also works with empty color strings.

    Args:
        string (str): The string you want to colorize.
        color (str): The color you want to use.
        bold (bool, optional): Whether you want the text to be bold. Defaults to
            ``False``.
        highlight (bool, optional):  Whether you want to highlight the text. Defaults to
            ``False``.

    Returns:
        str: Colorized string.
    """
    if color:  # If not empty.
        return gym_colorize(string, color, bold, highlight)
    else:
        return string


def friendly_list(input_list, apostrophes=False):
    """Transforms a list to a human friendly format (separated by commas and ampersand).

    Args:
        input_list (list): The input list.
        apostrophes(bool, optional): Whether the list items should be encapsuled with
            apostrophes. Defaults to ``False``.

    Returns:
        str: Human friendly list string.
    """
    input_list = [
        "'" + str(item) + "'" if apostrophes else str(item) for item in input_list
    ]
    return " & ".join(", ".join(input_list).rsplit(", ", 1))


def verify_number_and_cast(x, name="value"):
    """Verify parameter is a single finite number and cast to a float.

    Args:
        x (object): The value to cast.
        name (str, optional): Name used in the error message. Defaults to
            ``"value"``.

    Returns:
        float: The value as a float.

    Raises:
        ConfigValidationError: When the value is not a finite number.
    """
    if isinstance(x, bool):
        raise ConfigValidationError(f"'{name}' must be a number, got a boolean ({x}).")
    try:
        x = float(x)
    except (ValueError, TypeError) as e:
        raise ConfigValidationError(
            f"'{name}' ({x!r}) could not be converted to a float."
        ) from e
    if not math.isfinite(x):
        raise ConfigValidationError(f"'{name}' must be finite, got {x}.")
    return x


def raise_on_violations(violations):
    """Raise a :class:`ConfigValidationError` when the violation list is not empty.

    Args:
        violations (list): List of violation messages.

    Raises:
        ConfigValidationError: When at least one violation is present.
    """
    if violations:
        raise ConfigValidationError(violations)
