"""Errors shared by the l-bit and gate modules."""


class EdgeSiteError(ValueError):
    """Raised when an operation needs both neighbours of an edge site."""
