"""Exception types shared across the package."""


class SimplexRamseyError(Exception):
    pass


class BlockSizeError(SimplexRamseyError):
    """A pattern block does not have exactly `arity` elements."""


class OverlapError(SimplexRamseyError):
    """Two pattern blocks share an index."""


class CoverageError(SimplexRamseyError):
    """Pattern blocks do not cover an initial segment of the naturals."""


class DomainError(SimplexRamseyError):
    """An index map was applied outside its domain."""


class NegativeShiftError(SimplexRamseyError):
    """A shift map was built with a negative shift amount."""


class MonotonicityError(SimplexRamseyError):
    """Breakpoint data does not define an increasing bijection."""


class HypothesisViolation(SimplexRamseyError):
    """Inputs violate the ordering hypotheses of a constructive builder."""


class WitnessConstructionFailed(SimplexRamseyError):
    """A derived witness failed an ordering or containment comparison.

    Carries the offending comparison so runs can report it instead of
    silently accepting a broken certificate.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace or []


class CopySearchFailed(SimplexRamseyError):
    """A required sub-copy was not found at the sampling budget."""


class SearchBudgetExceeded(SimplexRamseyError):
    """An exhaustive search exceeded its node budget."""
