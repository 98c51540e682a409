class InvalidRegionError(ValueError):
    """A region description violates its validity invariants."""


class ConvergenceError(RuntimeError):
    """An iterative numerical routine failed to converge."""
