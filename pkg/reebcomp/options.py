"""
Validated settings.  Configuration objects (RunConfig, SamplePlan,
BuiltinField, ImportanceMeasure) declare their fields with the descriptors
in this module, so that a bad value is rejected at assignment time with a
ConfigError instead of surfacing later in the middle of a computation.

"""

import enum
import os
import pathlib
from fractions import Fraction
from numbers import Rational

from .exceptions import ConfigError


def _invalid(value, name, reason=''):
    msg = 'Invalid value {} of type {} for {}'.format(value, type(value), name)
    if reason:
        msg += ' ({})'.format(reason)
    return ConfigError(msg)


def _check_int(value, name, minimum=None):
    """Validate an integer setting, optionally bounded below."""
    if isinstance(value, bool):
        raise _invalid(value, name)
    # attempt to accept floats that are exactly int
    try:
        as_int = int(value)
    except (TypeError, ValueError):
        raise _invalid(value, name) from None
    if not isinstance(value, str) and as_int != value:
        raise _invalid(value, name, 'not an integer')
    if minimum is not None and as_int < minimum:
        raise _invalid(value, name, 'must be at least {}'.format(minimum))
    return as_int


def to_rational(value):
    """
    Convert ``value`` to an exact Fraction.  Strings are parsed as decimal
    literals (or ``p/q``) so that ``"0.1"`` becomes exactly 1/10; floats are
    converted through their shortest repr for the same reason.

    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        value = repr(value)
    if isinstance(value, str):
        # raises ValueError for 'nan' and 'inf'
        return Fraction(value.strip())
    raise TypeError('Cannot convert {!r} to a rational'.format(value))


def _check_rational(value, name, minimum=None, strict=False):
    """Validate an exact rational setting."""
    try:
        as_frac = to_rational(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise _invalid(value, name) from None
    if minimum is not None:
        if strict and as_frac <= minimum:
            raise _invalid(value, name, 'must be greater than {}'.format(minimum))
        if as_frac < minimum:
            raise _invalid(value, name, 'must be at least {}'.format(minimum))
    return as_frac


def _check_choice(value, name, choices):
    """Checks the option against an Enum class or a collection of strings"""
    if isinstance(choices, type) and issubclass(choices, enum.Enum):
        if isinstance(value, choices):
            return value
        if isinstance(value, str):
            try:
                return choices[value.upper().replace('-', '_')]
            except KeyError:
                pass
        raise _invalid(value, name, 'expected one of {}'.format(
            ', '.join(m.name.lower() for m in choices)))
    if value not in choices:
        raise _invalid(value, name, 'expected one of {}'.format(', '.join(map(str, choices))))
    return value


def _check_path(value, name):
    if isinstance(value, (str, os.PathLike)):
        return pathlib.Path(value)
    raise _invalid(value, name)


class _Option:
    """A descriptor for validated attributes."""
    # subclasses set _checker to one of the module-level _check_* functions

    _checker = None

    def __init__(self, default=None, **checker_kwargs):
        self.default = default
        self.checker_kwargs = checker_kwargs

    def __set_name__(self, owner, name):
        self.public_name = name
        self.private_name = '_opt_' + name

    def __get__(self, instance, owner):
        if instance is None:
            return self
        return getattr(instance, self.private_name, self.default)

    def __set__(self, instance, value):
        # None always means "back to the default"
        if value is None:
            instance.__dict__.pop(self.private_name, None)
            return
        value = self.__class__._checker(value, self.public_name, **self.checker_kwargs)
        setattr(instance, self.private_name, value)


class IntOption(_Option):
    """Descriptor for integer settings, with an optional ``minimum``"""
    _checker = _check_int


class RationalOption(_Option):
    """Descriptor for exact rational settings"""
    _checker = _check_rational


class ChoiceOption(_Option):
    """Descriptor for settings restricted to ``choices``"""
    _checker = _check_choice


class PathOption(_Option):
    """Descriptor for filesystem paths; stored as :class:`pathlib.Path`"""
    _checker = _check_path


class BooleanOption(_Option):
    """Descriptor for boolean settings"""
    _checker = staticmethod(lambda value, name: bool(value))


def default_workers():
    """
    Number of worker processes used for the rectangle map, from the
    ``REEBCOMP_WORKERS`` environment variable.  ``0`` and ``1`` both mean
    "compute in this process".

    """
    raw = os.environ.get('REEBCOMP_WORKERS', '1')
    return _check_int(raw.strip() or '1', 'REEBCOMP_WORKERS', minimum=0)


def format_rational(value):
    """
    Format a Fraction as a literal that parses back to the same value: an
    exact decimal when the denominator allows one, ``p/q`` otherwise.

    """
    num, den = value.numerator, value.denominator
    if den == 1:
        return str(num)
    d, twos, fives = den, 0, 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return '{}/{}'.format(num, den)
    places = max(twos, fives)
    scaled = abs(num) * 10 ** places // den
    digits = str(scaled).rjust(places + 1, '0')
    sign = '-' if num < 0 else ''
    return '{}{}.{}'.format(sign, digits[:-places], digits[-places:])
