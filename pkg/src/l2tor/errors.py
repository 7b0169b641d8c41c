"""Exception types shared across the package."""


class DescriptorError(ValueError):
    """Malformed space descriptor; ``position`` is the offending offset."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnsupportedSpace(ValueError):
    """The requested symmetric space lies outside what the catalog resolves."""


class UnsupportedMetric(ValueError):
    """The metric normalization is unknown or breaks exactness."""


class QuadratureError(RuntimeError):
    """Numerical integration failed to reach the requested accuracy."""
