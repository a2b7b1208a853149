"""Exception hierarchy shared by all gentime modules."""

from __future__ import annotations


class GentimeError(Exception):
    """Base class for all errors raised by this package."""


class ModelDataError(GentimeError):
    """Bad indices, mismatched morphism endpoints, or malformed model data."""


class InvalidGeneratorError(GentimeError):
    """A generator set refers to classes the model does not have, or is empty."""


class InvalidPolicyError(GentimeError):
    """A generator enumeration policy produced no candidates."""


class NonTerminatingChainError(GentimeError):
    """A ghost-chain state repeated with a nonzero composite.

    In a finite-type model this means the chosen generator is not a strong
    generator (levels are infinite) or the model data is inconsistent.
    """


class InternalConsistencyError(GentimeError):
    """The ghost-chain lower bound and the saturation upper bound disagree.

    This is a test oracle: it is never silently resolved.
    """


class ResourceCapError(GentimeError):
    """A computation exceeded its configured resource cap."""


class PresentationError(GentimeError):
    """A graded-quiver presentation failed validation."""
