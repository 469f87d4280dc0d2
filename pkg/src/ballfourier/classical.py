"""Classical univariate families: Jacobi, Gegenbauer, continuous Hahn.

Normalizations match the hypergeometric representations used throughout the
library.  The Gegenbauer evaluation route is the 2F1 form (the one the ball
transforms generalize); the explicit Jacobi sum exists as an independent
cross-check path only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DenominatorPoleError
from .hypergeometric import _terminating_sum, hyp3f2_unit
from .special import log_gamma, pochhammer

__all__ = [
    "jacobi",
    "gegenbauer",
    "gegenbauer_series",
    "gegenbauer_norm",
    "HahnParameters",
    "continuous_hahn",
    "hahn_orthogonality_constant",
]


def _check_degree(n: int) -> int:
    if n < 0 or n != int(n):
        raise ValueError("polynomial degree must be a nonnegative integer")
    return int(n)


def _check_gegenbauer_lambda(lam: float) -> float:
    if not lam > -0.5:
        raise ValueError("Gegenbauer parameter must satisfy lambda > -1/2")
    if lam == 0.0:
        raise ValueError("Gegenbauer parameter lambda = 0 is excluded "
                         "(the norm has a Gamma(lambda) pole there)")
    return float(lam)


def jacobi(n: int, alpha: float, beta: float, x: float) -> float:
    """Jacobi polynomial P_n^(alpha,beta)(x) by the explicit binomial sum.

    Cross-check path only, so it favours exactness over speed: the sum is
    evaluated in rational arithmetic over the float-rounded inputs and
    rounded once at the end.  The alternating binomial terms cancel by
    several orders of magnitude at moderate degree, which a plain float
    loop cannot survive at the tolerances the identity tests use.
    """
    n = _check_degree(n)
    if alpha <= -1 or beta <= -1:
        raise ValueError("Jacobi parameters must satisfy alpha, beta > -1")
    xf = Fraction(float(x))
    af = Fraction(float(alpha))
    bf = Fraction(float(beta))
    total = Fraction(0)
    for k in range(n + 1):
        coeff = Fraction(1)
        for i in range(k):
            coeff *= n + af - i
        coeff /= math.factorial(k)
        for i in range(n - k):
            coeff *= n + bf - i
        coeff /= math.factorial(n - k)
        total += coeff * (xf + 1) ** k * (xf - 1) ** (n - k)
    return float(total / 2 ** n)


def gegenbauer(n: int, lam: float, x):
    """Gegenbauer polynomial C_n^(lambda)(x).

    ``x`` may be real, complex, or an array of either.  Evaluation runs the
    standard three-term recurrence in the degree, which is stable on and
    near [-1, 1] and keeps the parity identity C_n(-x) = (-1)^n C_n(x)
    exact in floating point.  The definitional terminating-2F1 form is
    available as :func:`gegenbauer_series`; its alternating sum loses up to
    ~1e-10 relative accuracy by n = 10, which is why it is not the
    production path (the two are cross-checked in the test suite).
    """
    n = _check_degree(n)
    lam = _check_gegenbauer_lambda(lam)
    arr = np.asarray(x)
    dtype = np.result_type(arr.dtype, np.float64)
    if n == 0:
        return np.ones(arr.shape, dtype=dtype)[()]
    prev = np.ones(arr.shape, dtype=dtype)
    curr = (2.0 * lam * arr).astype(dtype, copy=False)
    for k in range(2, n + 1):
        prev, curr = curr, (2.0 * (k - 1.0 + lam) * arr * curr
                            - (k - 2.0 + 2.0 * lam) * prev) / k
    return curr[()]


def gegenbauer_series(n: int, lam: float, x):
    """C_n^(lambda)(x) through the terminating 2F1 sum (definitional form).

    Kept as an identity cross-check against :func:`gegenbauer`; see there
    for why the recurrence is the production path.
    """
    n = _check_degree(n)
    lam = _check_gegenbauer_lambda(lam)
    prefactor = pochhammer(2.0 * lam, n) / math.factorial(n)
    arr = np.asarray(x)
    if not np.iscomplexobj(arr):
        # parity reduction keeps the 2F1 argument in [0, 1/2]
        sign = np.where(arr < 0.0, (-1.0) ** n, 1.0)
        z = (1.0 - np.abs(arr)) / 2.0
        value, _ = _terminating_sum([-float(n), n + 2.0 * lam], [lam + 0.5], z, n)
        return prefactor * (sign * value)[()]
    z = (1.0 - arr) / 2.0
    value, _ = _terminating_sum([-float(n), n + 2.0 * lam], [lam + 0.5], z, n)
    return prefactor * value[()]


def gegenbauer_norm(n: int, lam: float) -> float:
    """Squared L2 norm of C_n^(lambda) under the weight (1-x^2)^(lambda-1/2).

    Assembled in log space; Gamma(lambda) is rewritten as
    Gamma(lambda+1)/lambda so that negative lambda in (-1/2, 0) stays on
    positive gamma arguments (the signs of lambda and (2 lambda)_n cancel).
    """
    n = _check_degree(n)
    lam = _check_gegenbauer_lambda(lam)
    log_part = log_gamma(lam + 0.5) + log_gamma(0.5) - log_gamma(lam + 1.0)
    return float(np.exp(log_part) * lam * pochhammer(2.0 * lam, n)
                 / (math.factorial(n) * (n + lam)))


@dataclass(frozen=True)
class HahnParameters:
    """Continuous-Hahn parameter quadruple with positive real parts.

    Positivity is what the orthogonality weight integral requires.  Plain
    evaluation of the polynomials does not need it: pass a bare 4-tuple to
    :func:`continuous_hahn` for parameter regimes outside this class (the
    theta-factor Hahn form legitimately uses Re <= 0 entries).
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            value = complex(getattr(self, name))
            object.__setattr__(self, name, value)
            if not value.real > 0.0:
                raise ValueError(f"Hahn parameter {name} must have positive real part")

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)


def continuous_hahn(n: int, x, params):
    """Continuous Hahn polynomial p_n(x; a, b, c, d).

    ``params`` is a :class:`HahnParameters` or a plain 4-sequence (a, b, c, d).
    ``x`` may be complex or an array.  The definition is symmetric under
    swapping c and d: both orderings that appear in the Hahn-form identities
    evaluate identically.
    """
    n = _check_degree(n)
    a, b, c, d = params.as_tuple() if isinstance(params, HahnParameters) else map(complex, params)
    for lower in (a + c, a + d):
        if lower.imag == 0.0 and lower.real <= 0.0 and lower.real == int(lower.real) and lower.real > -n:
            raise DenominatorPoleError(
                f"Hahn lower parameter {lower} vanishes within the summation range")
    prefactor = (1j ** n) * pochhammer(a + c, n) * pochhammer(a + d, n) / math.factorial(n)
    series = hyp3f2_unit(n, n + a + b + c + d - 1.0, a + 1j * np.asarray(x), a + c, a + d)
    return prefactor * series


def hahn_orthogonality_constant(n: int, a1: float, a2: float) -> float:
    """Orthogonality normalization of p_n(x; a1, a2, a2, a1) on the real line
    under the gamma-product weight, for real a1, a2 > 0."""
    n = _check_degree(n)
    if not (a1 > 0 and a2 > 0):
        raise ValueError("Hahn orthogonality requires a1, a2 > 0")
    s = a1 + a2
    log_val = (math.log(math.pi)
               + log_gamma(2.0 * a1 + n) + log_gamma(2.0 * a2 + n)
               + 2.0 * log_gamma(s + n)
               - log_gamma(n + 1.0) - math.log(n + s - 0.5)
               - log_gamma(2.0 * s + n - 1.0))
    return float(np.exp(log_val))
