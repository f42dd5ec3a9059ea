"""Shared exception types."""


class MilnorLabError(Exception):
    """Base class for errors raised by this package."""


class CurveSpecError(MilnorLabError):
    """Malformed curve-spec input (syntax or semantics)."""


class ValidationError(CurveSpecError):
    """A datum violates its structural invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class InternalInconsistencyError(MilnorLabError):
    """Two independent computation routes disagreed.

    This never reflects bad input: it signals a construction bug and the
    CLI surfaces it with a dedicated exit code.
    """
