"""Small argument checks shared by the public functions and estimators."""

import math
import numbers

from .exceptions import InvalidArgumentError


def check_int(value, name, minimum=None):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise InvalidArgumentError(f"{name} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise InvalidArgumentError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_real(value, name, minimum=None, exclusive=False):
    if isinstance(value, bool) or not isinstance(value, numbers.Real) or math.isnan(value):
        raise InvalidArgumentError(f"{name} must be a real number, got {value!r}")
    if minimum is not None:
        if exclusive and not value > minimum:
            raise InvalidArgumentError(f"{name} must be > {minimum}, got {value}")
        if not exclusive and value < minimum:
            raise InvalidArgumentError(f"{name} must be >= {minimum}, got {value}")
    return float(value)


def check_fraction(value, name):
    """Accept a value in the half-open interval (0, 1]."""
    value = check_real(value, name)
    if not 0.0 < value <= 1.0:
        raise InvalidArgumentError(f"{name} must lie in (0, 1], got {value}")
    return value


def check_tokens(tokens, name):
    if isinstance(tokens, str):
        raise InvalidArgumentError(f"{name} must be a sequence of tokens, not a string")
    return list(tokens)
