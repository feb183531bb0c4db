"""Exception types raised by the estimation pipeline.

Everything numerical derives from :class:`SubspaceError` so callers (and the
CLI) can distinguish "the data violated a precondition" from programming
errors.
"""


class SubspaceError(Exception):
    """Base class for all numerical / precondition failures."""


class RankDeficient(SubspaceError):
    """A matrix that must have full column rank does not.

    Carries the numerical rank that was found, and optionally the index of
    the offending projection.
    """

    def __init__(self, message, rank=None, index=None):
        super().__init__(message)
        self.rank = rank
        self.index = index


class DimensionMismatch(SubspaceError):
    """Operands live in different ambient spaces or have incompatible shapes."""


class InvalidDimensions(SubspaceError):
    """A (m, r) pair outside the supported regime (need 1 <= r < m)."""


class IndexOutOfRange(SubspaceError):
    """A coordinate index falls outside [0, m)."""


class TooFewProjections(SubspaceError):
    """An operation needs at least two projections."""


class IdentifiabilityFailure(SubspaceError):
    """The normal matrix has a kernel larger than the target dimension.

    The uniqueness argument behind the estimator needs rank(B) = m - r; when
    that fails we refuse to return a truncated answer.
    """

    def __init__(self, message, rank=None, expected_rank=None):
        super().__init__(message)
        self.rank = rank
        self.expected_rank = expected_rank


class EchelonDegenerate(SubspaceError):
    """The leading r x r block of a projection basis is numerically singular."""


class NonPositiveDenominator(SubspaceError):
    """A bound was requested with delta <= 0 or sigma(B) <= 0."""


class EmptyList(SubspaceError):
    """An aggregate over projections/noise received an empty list."""


class MissingNoise(SubspaceError):
    """Noise matrices were requested but the projection set has none."""
