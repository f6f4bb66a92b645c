"""Exception types shared across the package."""

from __future__ import annotations


class HeistError(Exception):
    """Base class for all package errors."""


class ParseError(HeistError):
    """Graph text is not well-formed."""


class ValidationError(HeistError):
    """Graph data is well-formed but violates a structural invariant."""


class InputNotInLattice(HeistError):
    """An integer edge vector does not lie in the meridian lattice."""


class EmptyCycle(HeistError):
    """An operation that needs a nonzero cycle class received zero."""


class NotAdmissible(HeistError):
    """A color triple violates the admissibility conditions at the current level."""


class NotAnInteger(HeistError):
    """A cyclotomic value that should be a rational integer is not."""

    def __init__(self, value):
        super().__init__(f"not a rational integer: {value!r}")
        self.value = value
