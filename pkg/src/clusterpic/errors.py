"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: domain rejections (malformed or
unrealizable pictures, wild primes, too-small primes) exit with 1, usage
errors with 2, and integrity errors -- violations of internal invariants
that indicate a bug or a misused formula -- with 3.
"""

from __future__ import annotations


class ClusterError(Exception):
    """Base class for all package errors."""


class PictureError(ClusterError):
    """Malformed picture text or an axiom violation.

    ``position`` is a character offset into the input when the error came
    from the parser, else ``None``.
    """

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position

    def __str__(self) -> str:
        base = super().__str__()
        if self.position is not None:
            return f"{base} (at position {self.position})"
        return base


class WildInertiaError(ClusterError):
    """The residue characteristic divides a depth denominator."""


class NotPolynomialTypeError(ClusterError):
    """No cyclic action with the required orbit/orphan structure exists."""


class PrimeTooSmallError(ClusterError):
    """The residue field has too few elements for a coefficient assignment.

    ``needed`` is a lower bound on the number of distinct residues the
    assignment would require.
    """

    def __init__(self, message: str, needed: int):
        super().__init__(message)
        self.needed = needed


class IntegrityError(ClusterError):
    """An internal invariant failed; indicates a bug or formula misuse."""


class UnitViolationError(ClusterError):
    """A leading coefficient failed the residue-unit check.

    Raised during witness synthesis when a difference of root expansions
    has a non-unit leading coefficient; the coefficient search treats it
    as a retry signal.
    """
