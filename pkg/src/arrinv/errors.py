"""Exception types shared across the package."""


class ArrangementError(ValueError):
    """Invalid arrangement input (zero form, proportional lines, ...)."""


class NonIsolatedSingularitiesError(ValueError):
    """The curve has non-isolated singularities (a repeated factor)."""


class UnrealizableError(ValueError):
    """Named lattice parameters out of range, or no rational realization."""


class InvariantViolationError(RuntimeError):
    """An internal cross-check failed; indicates a bug, never user input."""
