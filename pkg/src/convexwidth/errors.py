"""Exception hierarchy.

Input problems derive from :class:`InputError` (CLI exit code 2); violations of
bounds that the construction is proven to respect derive from
:class:`InternalError` (exit code 3).
"""

from __future__ import annotations


class ConvexWidthError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ConvexWidthError, ValueError):
    pass


class DrawingError(InputError):
    """A drawing or graph violates a structural invariant."""


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip() if where else message)


class TrivialInstanceError(InputError):
    """Raised for drawings with fewer than three vertices where a cycle is required."""


class PreconditionError(InputError):
    pass


class TooLarge(InputError):
    pass


class BudgetExceeded(ConvexWidthError):
    pass


class NotMinKPlanar(InputError):
    """The drawing has a crossing pair whose both edges are crossed more than k times."""

    def __init__(self, k: int, pair, counts):
        self.k = k
        self.pair = pair
        self.counts = counts
        (e, f), (ce, cf) = pair, counts
        super().__init__(
            f"drawing is not outer min-{k}-planar: edges {e} and {f} cross "
            f"and are crossed {ce} and {cf} times"
        )


class ThreeConcurrentEdges(ConvexWidthError):
    def __init__(self, edges):
        self.edges = tuple(edges)
        super().__init__(f"three chords pass through one point: {self.edges}")


class InternalError(ConvexWidthError):
    """A proven invariant failed; indicates a bug in the pipeline."""


class DepthBoundViolated(InternalError):
    pass


class BoundViolated(InternalError):
    pass
