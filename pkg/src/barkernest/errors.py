"""Exception types raised across the package."""


class BarkerNestError(ValueError):
    """Base class for all domain errors."""


class UnsupportedLength(BarkerNestError):
    pass


class UnsupportedVariant(BarkerNestError):
    pass


class NotPowerOfTwo(BarkerNestError):
    pass


class LengthCapExceeded(BarkerNestError):
    pass


class EmptyFactorList(BarkerNestError):
    pass


class NotFeasible(BarkerNestError):
    """A length multiplier has a prime factor no Barker code can supply."""

    def __init__(self, multiplier, prime):
        self.multiplier = multiplier
        self.prime = prime
        super().__init__(f"multiplier {multiplier}: prime factor {prime} exceeds 13")


class ExhaustiveSearchTooLarge(BarkerNestError):
    pass


class MateCountMismatch(BarkerNestError):
    pass


class ZeroMainlobe(BarkerNestError):
    pass


class NumericalResidueTooLarge(BarkerNestError):
    pass


class FormatError(BarkerNestError):
    """A sequence file could not be parsed."""
