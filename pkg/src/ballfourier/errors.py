"""Exception types shared across the library."""


class PoleError(ValueError):
    """A gamma-type function was evaluated at a pole (nonpositive integer)."""


class DenominatorPoleError(PoleError):
    """A denominator Pochhammer factor vanishes inside a terminating series."""


class DomainError(ValueError):
    """A point lies outside the admissible domain of an operation."""


class NonFiniteIntegrandError(ArithmeticError):
    """An integrand evaluated to a non-finite value at a quadrature node."""
