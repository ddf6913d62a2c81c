"""
Text parsing shared by the CLI and the HTTP API.

Numbers may be decimals or exact fractions p/q so closed-form values such as
8/3 can be typed without rounding.
"""
import math
from fractions import Fraction

from .algebra import StructureConstants
from .exceptions import InvalidParameterError
from .soliton import grid_size


def parse_number(text):
    """Parse a decimal or p/q fraction into a finite float."""
    text = text.strip()
    if not text:
        raise InvalidParameterError("empty number")
    try:
        value = float(Fraction(text)) if '/' in text else float(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidParameterError(f"not a number: {text!r}")
    except OverflowError:
        raise InvalidParameterError(f"number out of range: {text!r}")
    if not math.isfinite(value):
        raise InvalidParameterError(f"not a finite number: {text!r}")
    return value


def parse_list(text, count, what):
    parts = text.split(',')
    if len(parts) != count:
        raise InvalidParameterError(f"{what} needs {count} comma-separated values, got {len(parts)}")
    return [parse_number(part) for part in parts]


def parse_constants(text):
    """'a1,a2,a3' -> StructureConstants."""
    return StructureConstants.of(parse_list(text, 3, 'constants'))


def parse_bounds(text):
    """'x0,x1,y0,y1' -> tuple with x0 < x1 and y0 < y1."""
    x0, x1, y0, y1 = parse_list(text, 4, 'bounds')
    if not (x1 > x0 and y1 > y0):
        raise InvalidParameterError(f"bounds must satisfy x0 < x1 and y0 < y1, got {text!r}")
    return x0, x1, y0, y1


def parse_grid(text):
    """'LO:HI:STEP' -> (lo, hi, step)."""
    parts = text.split(':')
    if len(parts) != 3:
        raise InvalidParameterError(f"grid must look like LO:HI:STEP, got {text!r}")
    lo, hi, step = (parse_number(part) for part in parts)
    grid_size(lo, hi, step)
    return lo, hi, step
