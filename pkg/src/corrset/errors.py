"""Exception hierarchy for the corrset package.

Every error raised by the library derives from CorrSetError, so callers can
catch the whole family with one clause.  Input problems additionally derive
from ValueError and numerical breakdowns from RuntimeError.
"""

from __future__ import annotations


class CorrSetError(Exception):
    """Base class for all corrset errors."""


class NonFiniteInputError(CorrSetError, ValueError):
    """A component of an input vector is NaN or infinite."""


class OutOfBoxError(CorrSetError, ValueError):
    """A component lies outside [-1, 1] beyond the validation tolerance."""


class NotSOrderedError(CorrSetError, ValueError):
    """An operation requiring x1 >= x2 >= x3 >= |x4| received unsorted input."""


class PreconditionError(CorrSetError, ValueError):
    """A documented precondition other than ordering was violated."""


class NotOnBoundaryError(CorrSetError, ValueError):
    """The input does not saturate the arcsine bound, so it has no
    single-generator identification."""


class NotInQuantumSetError(CorrSetError, ValueError):
    """Decomposition was requested for a vector outside the quantum set."""


class BisectionError(CorrSetError, RuntimeError):
    """Ray bisection could not localize the boundary crossing.  Signals
    numerical pathology immediately next to the box boundary."""


class InvariantViolationError(CorrSetError, ValueError):
    """A state or observable failed one of its named invariant checks."""


class DimensionError(CorrSetError, ValueError):
    """A local dimension outside the supported range was requested."""


class DomainError(CorrSetError, ValueError):
    """A scan or grid parameter is outside its admissible range."""


class InternalCheckError(CorrSetError, RuntimeError):
    """Two redundant computation paths disagreed.  This indicates a bug in
    the library rather than bad input; please report it."""
