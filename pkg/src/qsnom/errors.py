"""Exception types shared across the package.

Every failure mode that callers are expected to catch has a dedicated
class here; generic ``ValueError``/``TypeError`` are reserved for plain
argument mistakes.
"""

from __future__ import annotations


class QsnomError(Exception):
    """Base class for all domain errors raised by this package."""


class NotHermitianError(QsnomError):
    """Operator expected to be Hermitian is not, within tolerance."""


class BadSubsystemIndexError(QsnomError):
    """Subsystem index out of range, duplicated, or empty selection."""


class NotNormalizedError(QsnomError):
    """State amplitudes deviate from unit norm beyond tolerance."""


class UnsupportedPermittivityError(QsnomError):
    """Relative permittivity outside the supported range (>= 1)."""


class DegenerateGapError(QsnomError):
    """Perturbative energy denominator vanishes for a coupled level."""


class AmbiguousMatchingError(QsnomError):
    """No eigenvector overlaps the reference basis state dominantly."""


class DegenerateDenominatorError(QsnomError):
    """Closed-form coefficient denominator vanishes (image gap matches tip gap)."""


class ZeroStateError(QsnomError):
    """State vector has zero norm and cannot be normalized."""


class ShiftExceedsGapError(QsnomError):
    """Energy shift magnitude reaches or exceeds the emitting gap."""


class OutOfBracketError(QsnomError):
    """Target value lies outside the range attainable on the search bracket."""


class NoConvergenceError(QsnomError):
    """Iterative search exhausted its budget without meeting tolerance."""


class ConfigError(QsnomError):
    """Invalid, unknown, or missing run-configuration entry."""
