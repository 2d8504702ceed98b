"""
Exception hierarchy.

Mathematical failures found by the verifiers are reported as data (see
:mod:`ktres.models.reports`); the exceptions below are raised only when a
computation cannot continue.
"""


class KTResError(Exception):
    """Base class for all errors raised by the package."""


class InputError(KTResError, ValueError):
    """Malformed user input: files, polynomials, names or degrees."""


class PolynomialSyntaxError(InputError):
    """
    A polynomial could not be parsed.

    Attributes
    ----------
    text : str
        The offending input.
    column : int or None
        One-based column of the error when known.
    """

    def __init__(self, text: str, reason: str, column: "int | None" = None):
        self.text = text
        self.column = column
        where = f" at column {column}" if column is not None else ""
        super().__init__(f"Cannot parse polynomial {text!r}{where}: {reason}")


class RingMismatchError(InputError):
    """Operands live in different polynomial rings."""


class NoWitnessError(InputError):
    """The monomials form a regular sequence, so no witness pair exists."""


class NotInImageError(KTResError):
    """A lift was requested for an element outside the image."""


class SignFaultError(KTResError):
    """An identity that holds by construction failed: a sign convention is off."""


class IncompletePsiTableError(KTResError, LookupError):
    """A value of psi is needed beyond the degree the table is complete to."""


class DgcaLawError(KTResError):
    """A product table violates commutativity, associativity or Leibniz."""
