"""Exception taxonomy shared by the whole package.

Each class maps to one CLI exit code; see cli.EXIT_CODES.
"""

from __future__ import annotations


class StringsError(Exception):
    """Base class for every error this package raises on purpose."""


class DimensionError(StringsError, ValueError):
    """Array shape or index range does not match the declared lattice."""


class InvalidStateError(StringsError, ValueError):
    """A state object violates its own invariants (ordering, ranges, ice)."""


class InvalidOperatorError(StringsError, ValueError):
    """An operator fails a structural requirement, e.g. Hermitian pairing."""


class CapacityError(StringsError):
    """Requested basis or matrix exceeds the configured size cap."""


class PoleGuardError(StringsError):
    """Secular evaluation point sits on (or hugs) a pole of the resolvent."""

    def __init__(self, energy: float, pole: float):
        super().__init__(f"E={energy!r} within guard distance of pole {pole!r}")
        self.energy = energy
        self.pole = pole


class NumericalError(StringsError):
    """An iterative numerical routine failed to converge."""
