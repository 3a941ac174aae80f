"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class CFKError(Exception):
    """Base class for all errors raised by cfkbounds."""


class NonExactDivision(CFKError, ArithmeticError):
    """Polynomial division left a nonzero remainder."""


class NotAComplex(CFKError, ValueError):
    """A boundary matrix does not square to zero."""

    def __init__(self, pair, message=None):
        self.pair = pair
        super().__init__(message or f"boundary does not square to zero at (row, col) = {pair}")


class NotACycle(CFKError, ValueError):
    """A chain handed to a homology routine is not a cycle."""


class ValidationError(CFKError, ValueError):
    """A knot complex violates one of its structural invariants."""


class InhomogeneousArrow(ValidationError):
    def __init__(self, arrow, expected, message=None):
        self.arrow = arrow
        self.expected = expected
        super().__init__(message or f"arrow {arrow} is inhomogeneous; gradings require monomial {expected}")


class DifferentialNotSquareZero(ValidationError):
    def __init__(self, pair, message=None):
        self.pair = pair
        super().__init__(message or f"d^2 != 0: nonzero composite from {pair[0]} to {pair[1]}")


class SelfLoop(ValidationError):
    def __init__(self, arrow):
        self.arrow = arrow
        super().__init__(f"arrow {arrow} is a self-loop")


class InconsistentGradingSystem(ValidationError):
    """The arrow relations admit no grading assignment."""


class AsymmetricAlexanderMultiset(ValidationError):
    """No Alexander normalization makes the grading multiset symmetric."""


class BadStaircase(ValidationError):
    """Staircase exponents are not strictly decreasing and symmetric."""


class FormatError(ValidationError):
    """Malformed complex text file."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class NotCoprime(CFKError, ValueError):
    """Torus knot parameters share a common factor."""


class NonAlternatingAlexander(CFKError):
    """Alexander polynomial coefficients are not alternating +-1."""


class NotAKnotComplex(CFKError):
    """The complex fails a structural property every knot complex has."""


class NonTerminatingTorsion(NotAKnotComplex):
    """A torsion class survives beyond the w-power cap."""


class SymmetryViolation(NotAKnotComplex):
    """The computed ideal generators are not u/w symmetric."""
