class SumsetError(Exception):
    """Base class for errors raised by this package."""


class DimensionMismatch(SumsetError, ValueError):
    pass


class DegenerateLatticeError(SumsetError, ValueError):
    """A basis that should span a full-rank lattice is singular."""


class BudgetExceeded(SumsetError):
    """The brute-force oracle was asked for more points than its budget allows."""


class HypothesisError(SumsetError, ValueError):
    """An input does not satisfy the hypotheses of the requested computation.

    ``reason`` is a short machine-readable tag (``"not_simplex"``,
    ``"not_generating"``, ...) so the CLI can report it verbatim.
    """

    def __init__(self, message, reason="hypothesis"):
        super().__init__(message)
        self.reason = reason
