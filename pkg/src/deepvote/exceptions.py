"""Exception hierarchy.

Everything raised on bad input derives from :class:`DeepVoteError`, which is
itself a :class:`ValueError` so callers that only care about "bad input" can
catch the builtin.
"""


class DeepVoteError(ValueError):
    pass


class NotAPermutation(DeepVoteError):
    def __init__(self, message: str, column: int | None = None):
        super().__init__(message)
        self.column = column


class EmptyRanking(DeepVoteError):
    pass


class DimensionMismatch(DeepVoteError):
    pass


class CapExceeded(DeepVoteError):
    """The instance is too large for exhaustive search over all rankings."""


class InvalidOrder(DeepVoteError):
    pass


class NegativeWeightUnderRoot(DeepVoteError):
    pass


class NonPositiveWeight(DeepVoteError):
    pass


class NotApplicable(DeepVoteError):
    """An axiom check whose premise does not hold on the given profile."""


class NoEligibleVoter(NotApplicable):
    pass


class ParseError(DeepVoteError):
    pass


class NotRectangular(ParseError):
    pass


class DuplicateLabel(ParseError):
    pass


class UnknownLabel(ParseError):
    pass


class BadCount(ParseError):
    pass


class IncompleteOrder(ParseError):
    pass
