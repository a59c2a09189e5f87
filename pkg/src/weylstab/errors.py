"""Typed errors shared across the package.

Every failure mode the CLI maps to an exit code has its own class here, so
callers can distinguish bad input (1) from a blown enumeration cap (2) from
an unsupported regime (3) without parsing messages.
"""
from __future__ import annotations

__all__ = [
    "WeylstabError",
    "ValidationError",
    "DimensionMismatch",
    "NotASubgroup",
    "GroupMismatch",
    "SeedNotPD",
    "NotPositiveDefinite",
    "CapExceeded",
    "InvariantBroken",
    "NonAbelianIdentityComponent",
]


class WeylstabError(Exception):
    """Base class for all package errors."""


class ValidationError(WeylstabError):
    """Input data violates a documented invariant; message names it."""


class DimensionMismatch(ValidationError):
    pass


class NotASubgroup(ValidationError):
    pass


class GroupMismatch(ValidationError):
    pass


class SeedNotPD(ValidationError):
    pass


class NotPositiveDefinite(ValidationError):
    pass


class CapExceeded(WeylstabError):
    """An enumeration exceeded its configured cap."""


class InvariantBroken(WeylstabError):
    """A derived value failed an invariant that validated inputs guarantee."""


class NonAbelianIdentityComponent(WeylstabError):
    """Operation requires the identity component to be a torus."""
