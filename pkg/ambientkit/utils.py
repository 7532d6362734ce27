import logging
import time
from fractions import Fraction
from functools import wraps


logger = logging.getLogger(__name__)


def from_maybe(default, maybe):
    """
    Return `maybe` unless it is None, in which case `default`.

    (argument order follows Haskell's `fromMaybe default maybe`)
    """
    return maybe if maybe is not None else default


def format_rational(value):
    """
    Canonical string form of an exact rational: "p/q" in lowest terms,
    "p" for integers, "0" for zero.
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def is_half_integer_multiple(value):
    """
    True when 2 * value is an integer, i.e. the weight is *not* generic.
    """
    return (2 * Fraction(value)).denominator == 1


def debug(label=""):
    """
    Decorator logging entry and elapsed time (ms) of the wrapped call at
    DEBUG level.
    """

    def decorator(fn):
        name = label or fn.__qualname__

        @wraps(fn)
        def wrapped(*args, **kwargs):
            if not logger.isEnabledFor(logging.DEBUG):
                return fn(*args, **kwargs)
            logger.debug(f"{name}: start")
            started = time.perf_counter()
            result = fn(*args, **kwargs)
            elapsed = (time.perf_counter() - started) * 1000
            logger.debug(f"{name}: done in {elapsed:.1f}ms")
            return result

        return wrapped

    return decorator
