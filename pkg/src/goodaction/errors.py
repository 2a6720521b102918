"""Exception types shared across the package."""


class GroupError(Exception):
    """Base class for all library errors."""


class IndexOutOfRange(GroupError, IndexError):
    pass


class ParentMismatch(GroupError, ValueError):
    pass


class NotNormal(GroupError, ValueError):
    pass


class NonSolvableUnsupported(GroupError):
    pass


class OrderBoundExceeded(GroupError):
    """A configured desk-scale bound would be exceeded."""


class NotAnAutomorphism(GroupError, ValueError):
    pass


class NotAHomomorphism(GroupError, ValueError):
    pass


class RelationViolated(NotAHomomorphism):
    pass


class PreconditionFailed(GroupError, ValueError):
    pass


class SearchExhausted(GroupError):
    pass


class HypothesisFailed(GroupError):
    pass


class NotLinearCharacter(GroupError, ValueError):
    pass


class IndexBoundExceeded(OrderBoundExceeded):
    pass


class ArithmeticMismatch(GroupError, AssertionError):
    """Two independent computations of the same quantity disagree."""


class ManifestError(GroupError, ValueError):
    pass
