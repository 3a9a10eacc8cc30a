"""Exception types shared across the package."""


class DataError(ValueError):
    """Raised for invalid input data: malformed files, degenerate labels,
    mismatched shapes. The CLI maps this to exit code 2."""


class ModelError(ValueError):
    """Raised for unreadable or incompatible model files. The CLI maps this
    to exit code 3."""
