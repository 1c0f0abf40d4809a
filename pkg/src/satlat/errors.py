"""Exception types shared across the package."""


class SatlatError(Exception):
    """Base class for all package-specific errors."""


class SpecError(SatlatError):
    """A ring spec file is malformed; carries the offending key path."""

    def __init__(self, message, key=None):
        self.key = key
        super().__init__(message if key is None else f"{key}: {message}")


class PolyParseError(SatlatError):
    """Polynomial text failed to parse; carries the character position."""

    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class UnknownVariable(PolyParseError):
    def __init__(self, name, position):
        self.name = name
        super().__init__(f"unknown variable {name!r}", position)


class NonUnitDenominatorInGF(SatlatError):
    """A coefficient denominator is not invertible in the prime field."""


class SideMismatch(SatlatError):
    """Two ideal handles live on incompatible sides or rings."""


class NotAMonomial(SatlatError):
    """An operation requiring a nonzero monomial got something else."""


class DegreeBoundTooLow(SatlatError):
    """A truncated handle cannot answer a query at the requested degree."""


class ExactnessRequired(SatlatError):
    """An operation whose certificate would be unsound on truncated inputs."""


class NotAssociative(SatlatError):
    """Structure constants violate associativity; carries the triple."""

    def __init__(self, i, j, k):
        self.triple = (i, j, k)
        super().__init__(f"associativity fails on basis triple ({i}, {j}, {k})")


class NoUnit(SatlatError):
    """The declared unit element does not act as a two-sided identity."""


class BadIdempotents(SatlatError):
    """The declared decomposition is not a set of orthogonal idempotents summing to 1."""


class InfiniteFieldUnsupported(SatlatError):
    """Exhaustive enumeration requires a finite coefficient field."""


class CombinatorialBlowup(SatlatError):
    """An enumeration exceeded the configured candidate bound."""

    def __init__(self, count, bound):
        self.count = count
        self.bound = bound
        super().__init__(f"enumeration would visit {count} candidates (bound {bound})")


class UnknownExample(SatlatError):
    """The example runner was asked for an id it does not know."""
