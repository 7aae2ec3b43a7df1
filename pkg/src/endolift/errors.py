"""Exception types shared across the library.

Every failure mode that callers are expected to catch has its own class here;
anything else is a plain ValueError/TypeError bug.
"""


class EndoliftError(Exception):
    """Base class for all library-specific failures."""


class InexactDivision(EndoliftError):
    """A division that must be exact (by p, or by a p-power) left a remainder."""


class NotAUnit(EndoliftError):
    """Inversion was requested for an element that is zero modulo p."""


class PrecisionExhausted(EndoliftError):
    """A nontrivial operation was attempted with no p-adic precision left."""


class WindowExhausted(EndoliftError):
    """A required series inverse could not be represented inside the x1 window.

    Callers are expected to widen the window and retry.
    """


class PrecisionTooLow(EndoliftError):
    """The working precision cannot support the requested index/coindex."""


class NotAnOrder(EndoliftError):
    """The supplied (trace, norm) data degenerates: no quadratic order is generated."""


class ConsistencyFailure(EndoliftError):
    """Two independently computed values that must agree do not."""


class StructureViolation(EndoliftError):
    """A structural clause of the increment displays failed; names the clause."""


class ShapeViolation(EndoliftError):
    """A stable lattice outside the asserted diagonal family appeared."""


class StabilityFailure(EndoliftError):
    """A descended lattice failed its operator-stability verification."""
