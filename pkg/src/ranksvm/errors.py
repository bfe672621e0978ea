"""Exception types shared across the package."""


class DegenerateDataError(ValueError):
    """Raised when a dataset (or every query group in it) has no preference pairs.

    The pairwise loss is normalized by the number of preference pairs N, so
    N = 0 leaves the objective undefined.
    """


class SvmlightParseError(ValueError):
    """Raised on malformed svmlight input; carries the offending line number."""

    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class SolverFailureError(RuntimeError):
    """Raised when the inner dual QP solver exhausts its step budget.

    The residual duality gap is attached so callers can decide whether the
    approximate solution is still usable.
    """

    def __init__(self, message: str, gap: float):
        super().__init__(message)
        self.gap = gap
