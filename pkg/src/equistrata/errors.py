"""Shared error type for exact cross-checks."""


class ConsistencyError(RuntimeError):
    """An internal exact cross-check failed.

    Raised when independently computed quantities disagree (degrees, weights,
    genus, coset orders, strand counts).  This falsifies the input data or
    the implementation, never the arithmetic, so it is not a ValueError.
    """
