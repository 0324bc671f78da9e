"""Exception hierarchy.

Every domain failure raised by the library derives from :class:`MatroidError`;
the CLI prints the class name of the exception on standard error.
"""


class MatroidError(Exception):
    """Base class for all domain errors."""


class GroundTooLarge(MatroidError):
    pass


class DuplicateLabel(MatroidError):
    pass


class LabelNotInGround(MatroidError):
    pass


class EmptyBases(MatroidError):
    pass


class UnequalCardinality(MatroidError):
    pass


class ExchangeViolation(MatroidError):
    """Basis exchange fails; ``witness`` is ``(B1, B2, x)`` as label sets."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotACircuitHyperplane(MatroidError):
    pass


class NotAPartition(MatroidError):
    pass


class InconsistentNecklace(MatroidError):
    pass


class NotARealizablePermutationRank(MatroidError):
    pass


class OverlappingGrounds(MatroidError):
    pass


class SharedElementNotUnique(MatroidError):
    pass


class FixedConnector(MatroidError):
    """The 2-sum connector is a loop or coloop; use the deletion branch."""


class GroundMismatch(MatroidError):
    pass


class RankMismatch(MatroidError):
    pass


class BudgetExceeded(MatroidError):
    def __init__(self, message, needed=None, budget=None):
        super().__init__(message)
        self.needed = needed
        self.budget = budget


class PreconditionViolation(MatroidError):
    pass


class NotTwoConnected(MatroidError):
    pass


class NotAPositroid(MatroidError):
    pass


class NotTernary(MatroidError):
    pass


class BadRank(MatroidError):
    pass


class RankTooSmall(MatroidError):
    pass


class OracleScaleExceeded(MatroidError):
    pass


class ParseError(MatroidError):
    """Malformed text input (matroid files, permutations)."""


class InternalInconsistency(AssertionError):
    """Two independent algorithms disagreed; indicates a library bug."""
