"""Exception hierarchy shared by all prabmix modules."""

from __future__ import annotations


class PrabmixError(Exception):
    """Base class for all library-specific errors."""


class DomainError(PrabmixError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DegenerateLawError(DomainError):
    """The alpha=1 point-mass law was used where a density is required."""


class ConvergenceError(PrabmixError, RuntimeError):
    """A numeric routine failed to reach its tolerance.

    ``result`` carries the best estimate available at the point of failure
    (a NumResult for quadratures, a float for inversions) or None.
    """

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


class RouteError(PrabmixError):
    """A computation route refused the given arguments.

    Raised e.g. by the Mittag-Leffler series when the argument is outside
    the range where double precision can honour the error budget; the
    message names the alternative routes.
    """


class SamplingError(PrabmixError):
    """A sampling strategy could not be applied to the requested law."""


class ConsistencyError(PrabmixError):
    """Two supposedly-equal computation routes disagreed beyond tolerance."""
