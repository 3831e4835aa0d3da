"""
Exception hierarchy for reebcomp.  The base of the hierarchy is
ReebComplementException.  Every exception has a short ``code`` attribute which
can be checked instead of the type, which is handy when errors are reported
through the command line or collected by the JSON validator.

Argument misuse (a negative threshold, an unknown builtin name) raises
ConfigError, which is also a ValueError, so callers that only know about the
builtin exceptions still catch it.


"""


class ReebComplementException(Exception):
    """The base exception for any exceptional condition in reebcomp."""
    code = 'EUNKNOWN'

    def __init__(self, msg, code=None):
        super().__init__(msg)
        if code is not None:
            self.code = code


class ParseError(ReebComplementException):  # EPARSE
    """Raised when an RCM file cannot be parsed.

    Carries the 1-based ``lineno`` of the offending line and the ``path`` of
    the file (``None`` when parsing from a stream).

    """
    code = 'EPARSE'

    def __init__(self, msg, lineno, path=None):
        where = '{}:{}'.format(path, lineno) if path else 'line {}'.format(lineno)
        super().__init__('{}: {}'.format(where, msg))
        self.lineno = lineno
        self.path = path


class ValidationError(ReebComplementException):  # EINVAL
    code = 'EINVAL'


class ConfigError(ReebComplementException, ValueError):  # ECONFIG
    code = 'ECONFIG'


class NonGenericValue(ReebComplementException):  # ENONGENERIC
    code = 'ENONGENERIC'


class OutsideArc(ReebComplementException):  # ERANGE
    code = 'ERANGE'


class ZeroArea(ReebComplementException):  # EZEROAREA
    code = 'EZEROAREA'


class OpenContour(ReebComplementException):  # EOPEN
    code = 'EOPEN'


class UnsupportedDimension(ReebComplementException):  # EDIM
    code = 'EDIM'


class IntersectingContours(ReebComplementException):  # EINTERSECT
    code = 'EINTERSECT'


class ComputationError(ReebComplementException):  # EINTERNAL
    code = 'EINTERNAL'


# errors that point at a bug rather than at bad input; the command line exits
# with a different status for these.
INTERNAL_ERRORS = (IntersectingContours, ComputationError)


class MeshStateError(Exception):
    """
    Indicates that an immutable mesh, graph or polygon set was about to be
    modified in place.
    """


# maps a code to the exception raised for it
EXCEPTION_MAP = {
    cls.code: cls for cls in (
        ValidationError, ConfigError, NonGenericValue, OutsideArc, ZeroArea, OpenContour,
        UnsupportedDimension, IntersectingContours, ComputationError,
    )
}


def raise_for(code, msg):
    """Raise the exception registered for ``code``, or the base exception for an unknown code."""
    exc_cls = EXCEPTION_MAP.get(code)
    if exc_cls is None:
        raise ReebComplementException(msg, code)
    raise exc_cls(msg)
