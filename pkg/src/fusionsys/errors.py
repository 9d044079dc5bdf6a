"""Exception types shared across the package.

Every error that can surface through the CLI or the HTTP service carries a
``module`` attribute naming the subsystem that raised it, so cap violations
and precondition failures can be reported with their provenance.
"""

from __future__ import annotations


class FusionError(Exception):
    """Base class for all package errors."""

    module = "fusionsys"

    def __init__(self, message: str, *, module: str | None = None):
        super().__init__(message)
        if module is not None:
            self.module = module


class CapExceeded(FusionError):
    """A documented desk-scale cap (degree, order, lattice, closure) was hit."""


class PreconditionError(FusionError):
    """An operation was called with arguments violating its stated contract."""


class CatalogError(FusionError):
    """Unknown group label, out-of-bounds parameters, or a bad data file."""

    module = "catalog"


class InternalInconsistency(FusionError):
    """An invariant the theory guarantees was violated; indicates a bug."""
