"""Exception types shared across the package."""


class KrcascadeError(Exception):
    """Base class for all package errors."""


class InvalidInputError(KrcascadeError, ValueError):
    """Structurally invalid argument (bad table, mismatched sizes, bad labels)."""


class InvalidCongruenceError(InvalidInputError):
    """Partition not compatible with the monoid operation; carries a violating quadruple."""

    def __init__(self, message, quadruple=None):
        super().__init__(message)
        self.quadruple = quadruple


class NotAGroupError(InvalidInputError):
    """Monoid table without two-sided inverses; names the offending element."""


class NotPermutationResetError(InvalidInputError):
    """Semiautomaton has an input that is neither a permutation nor a strict reset."""


class WitnessError(InvalidInputError):
    """Covering witness rejected at construction (range, surjectivity, domain closure)."""


class ResourceCapError(KrcascadeError):
    """A configured resource cap was exceeded (closure size, group order, product states)."""


class ParseError(KrcascadeError, ValueError):
    """Malformed document; message names the offending field or line."""
