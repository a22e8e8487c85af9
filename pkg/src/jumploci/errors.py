"""Exception hierarchy.

``InputError`` subclasses describe malformed user input (CLI exit status 2);
``DomainError`` subclasses describe valid input the library cannot handle
(CLI exit status 1).
"""


class JumpLociError(Exception):
    pass


class InputError(JumpLociError, ValueError):
    pass


class DomainError(JumpLociError):
    pass


class MalformedNumber(InputError):
    pass


class ZeroTriple(InputError):
    pass


class DuplicateLine(InputError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class DimensionMismatch(InputError):
    pass


class SumNonzero(InputError):
    pass


class UnknownFixture(InputError, KeyError):
    pass


class ChartMismatch(InputError):
    """The chosen line at infinity is not compatible with the class cover."""


class UnsupportedClass(DomainError):
    """Closed-form enumeration is only available for nodal, C1 and C2 arrangements."""


class SearchExhausted(DomainError):
    """No admissible residue vector was found in the searched box."""
