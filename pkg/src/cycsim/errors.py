"""Exception hierarchy shared by all cycsim modules.

The CLI maps these onto exit codes: DomainError -> 2,
InternalInvariantError -> 3, CapacityExceeded -> 4.
"""


class CycsimError(Exception):
    pass


class DomainError(CycsimError, ValueError):
    """A precondition on the inputs is violated."""


class InternalInvariantError(CycsimError, RuntimeError):
    """An internal consistency check failed; indicates a bug, never bad input."""


class CapacityExceeded(CycsimError, RuntimeError):
    """An enumeration or search exceeds its configured size bound."""


class NotDivisible(CycsimError, ArithmeticError):
    """Exact division in a cyclotomic ring has no integral solution.

    This is a first-class outcome of ``cyclotomic_divide``, not a bug.
    """


class NotInRtilde(DomainError):
    """The element does not lie in the reduced free representation lattice."""
