"""Exception types shared across the package.

The CLI maps these onto exit codes: ``InvalidInput`` and its subclasses
exit with 2, ``CapExceeded`` exits with 3.
"""

from __future__ import annotations


class UltrahomError(Exception):
    """Base class for all package errors."""


class InvalidInput(UltrahomError, ValueError):
    """Inputs violate an operation's precondition."""


class DegreeMismatch(InvalidInput):
    pass


class NotInGroup(InvalidInput):
    pass


class InvalidPartialAutomorphism(InvalidInput):
    """The pairing does not extend to an isomorphism of generated subgroups.

    ``relation`` is a word (list of ``(generator_index, exponent)``) that
    evaluates to the identity on one side and not on the other, and
    ``side`` says which side it vanishes on.
    """

    def __init__(self, message, relation=None, side=None):
        super().__init__(message)
        self.relation = relation
        self.side = side


class CapExceeded(UltrahomError):
    """A resource cap was hit.

    ``stages`` lists the construction stages completed before the cap, so a
    caller can emit a partial certificate instead of silently truncating.
    """

    def __init__(self, message, stages=(), partial=None):
        super().__init__(message)
        self.stages = list(stages)
        self.partial = partial


class RootUnavailable(CapExceeded):
    """No k-th root of the element exists at any accessible tower level."""
