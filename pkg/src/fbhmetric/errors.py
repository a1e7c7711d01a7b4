"""Semantic exception hierarchy for the fbhmetric package."""


class FbhMetricError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(FbhMetricError):
    """Vector or matrix dimensions do not match the domain signature."""


class OutOfDomainError(FbhMetricError):
    """A scalar argument lies outside the interval a formula is defined on."""


class NotInteriorError(FbhMetricError):
    """An operation requires an interior point of the domain."""


class NotOnBoundaryError(FbhMetricError):
    """An operation requires a boundary point of the domain."""


class DegenerateDirectionError(FbhMetricError):
    """The Minkowski-functional equation degenerates (vanishing w-component)."""


class NoRootBranchError(FbhMetricError):
    """The transcendental root equation has no solution for the given ratio."""


class NonConvergenceError(FbhMetricError):
    """An iterative solver or rejection sampler exhausted its budget."""


class InvalidParametersError(FbhMetricError):
    """Structured parameters violate their admissibility constraints."""


class NotHolomorphicError(FbhMetricError):
    """Finite-difference cross checks indicate the map is not holomorphic."""
