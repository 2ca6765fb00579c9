"""Exception types shared across the package."""

from __future__ import annotations


class CardinalScaleError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CardinalScaleError):
    """An alternative lies outside the oracle's parameter domain."""


class BadConfig(CardinalScaleError):
    """A configuration value is missing, malformed, or inconsistent."""


class BracketInvalid(CardinalScaleError):
    """A bisection bracket does not straddle the target comparison."""


class NoConvergence(CardinalScaleError):
    """A bisection exhausted its iteration budget without resolving."""


class PreconditionNotStrict(CardinalScaleError):
    """An operation requiring a strict preference received indifference."""


class AnchorsNotStrict(CardinalScaleError):
    """The two anchor alternatives are not strictly ordered."""


class NestingViolation(CardinalScaleError):
    """A refined grid point is not indifferent to its coarse twin."""


class DegenerateFit(CardinalScaleError):
    """An affine fit has no usable slope (constant or reversed data)."""


class NonMonotoneGenerator(CardinalScaleError):
    """A generator function is not nondecreasing on its domain."""


class SchemaError(CardinalScaleError):
    """A model document does not match the expected schema."""


class InconsistentTable(CardinalScaleError):
    """A comparison table fails totality or reflexivity."""


class ModelTooLarge(CardinalScaleError):
    """A finite model exceeds the size cap of the requested operation."""


class StaleQuery(CardinalScaleError):
    """An answer referenced a query id that is not the pending one."""


class SessionComplete(CardinalScaleError):
    """The session already finished; no further queries exist."""


class SessionFailed(CardinalScaleError):
    """The session aborted; inspect the failure reason."""


class TooEarly(CardinalScaleError):
    """No estimate is available yet at this stage of the session."""
