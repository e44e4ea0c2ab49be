"""Exception types shared across the package.

Everything deriving from PreconditionError means "the input violated a
documented precondition"; the CLI maps these to exit code 2.  Anything else
escaping an operation is an internal invariant violation (exit code 3).
"""


class PreconditionError(Exception):
    pass


class NotFiniteDimensional(PreconditionError):
    """The bound quiver algebra is not finite-dimensional below the degree cap."""


class MalformedRelation(PreconditionError):
    """A relation references unknown arrows, is non-composable, or is too short."""


class BudgetExhausted(PreconditionError):
    """A randomized search ran out of budget before certifying its answer."""


class NotProjective(PreconditionError):
    pass


class NotInjective(PreconditionError):
    pass


class NotSelfInjective(PreconditionError):
    pass


class NotMono(PreconditionError):
    pass


class NotGorensteinWithinCap(PreconditionError):
    pass


class NotGorensteinProjective(PreconditionError):
    pass


class NotOneGorenstein(PreconditionError):
    pass


class InfiniteProjectiveDimension(PreconditionError):
    pass


class NotLocallyProjective(PreconditionError):
    pass


class EnumerationCapExceeded(PreconditionError):
    pass
