"""Orthogonal polynomial basis on the unit ball.

The basis is the nested Gegenbauer product: factor j rescales coordinate
x_j by the radius left over from the first j-1 coordinates.  Points are
numpy arrays whose last axis has length r; evaluation broadcasts over any
leading batch axes.
"""

from __future__ import annotations

import math

import numpy as np

from .classical import gegenbauer
from .errors import DomainError
from .special import log_gamma, pochhammer

__all__ = [
    "tail_sum",
    "validate_multi_index",
    "ball_space_dim",
    "ball_basis_eval",
    "ball_norm",
    "ball_operator_residual",
]

# ||x|| may exceed 1 by this much before a point is rejected (roundoff slack).
_NORM_SLACK = 1e-12
# 1 - ||x_{j-1}||^2 below this is treated as the boundary; admitted points can
# reach about -2e-12 through the norm slack above, anything lower is an error.
_BOUNDARY_EPS = 1e-14
_PARTIAL_FLOOR = -4e-12


def validate_multi_index(n) -> tuple[int, ...]:
    """Coerce to a tuple of nonnegative ints (one entry per coordinate)."""
    entries = tuple(int(v) for v in n)
    if len(entries) == 0:
        raise ValueError("multi-index must have at least one entry")
    if any(v < 0 or v != w for v, w in zip(entries, n)):
        raise ValueError("multi-index entries must be nonnegative integers")
    return entries


def tail_sum(n, j: int) -> int:
    """|n^j| = n_j + ... + n_r for 1-based j; j = r+1 gives 0."""
    return int(sum(n[j - 1:]))


def total_degree(n) -> int:
    return tail_sum(n, 1)


def ball_space_dim(n: int, r: int) -> int:
    """Dimension of the degree-n orthogonal polynomial space in r variables."""
    if n < 0 or r < 1:
        raise ValueError("need degree n >= 0 and dimension r >= 1")
    return math.comb(n + r - 1, n)


def _check_mu(mu: float) -> float:
    if not mu > -0.5:
        raise ValueError("ball weight parameter must satisfy mu > -1/2")
    if mu == 0.0:
        raise ValueError("mu = 0 is excluded (Gamma(mu) pole in the norms)")
    return float(mu)


def ball_basis_eval(n, mu: float, x):
    """Evaluate the ball basis polynomial indexed by ``n`` at point(s) ``x``.

    ``x`` has shape (..., r).  On the boundary of an intermediate radius the
    continuous extension is used: factors with n_j > 0 vanish, factors with
    n_j = 0 are 1.  Points with ||x|| > 1 + 1e-12 raise :class:`DomainError`.
    """
    n = validate_multi_index(n)
    mu = _check_mu(mu)
    r = len(n)
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 0 or x.shape[-1] != r:
        raise ValueError(f"point must have {r} coordinates on its last axis")
    norm = np.sqrt(np.sum(x * x, axis=-1))
    if np.any(norm > 1.0 + _NORM_SLACK):
        raise DomainError("point lies outside the closed unit ball")

    result = np.ones(x.shape[:-1], dtype=np.float64)
    cum = np.zeros(x.shape[:-1], dtype=np.float64)
    for j in range(1, r + 1):
        nj = n[j - 1]
        lam = mu + tail_sum(n, j + 1) + (r - j) / 2.0
        s2 = 1.0 - cum
        if np.any(s2 < _PARTIAL_FLOOR):
            raise DomainError("partial norm exceeds 1 beyond roundoff tolerance")
        boundary = s2 <= _BOUNDARY_EPS
        s2_safe = np.where(boundary, 1.0, np.maximum(s2, 0.0))
        xj = x[..., j - 1]
        t = np.where(boundary, 0.0, xj / np.sqrt(s2_safe))
        if nj == 0:
            factor = np.ones_like(result)
        else:
            factor = np.where(boundary, 0.0,
                              np.maximum(s2, 0.0) ** (nj / 2.0) * gegenbauer(nj, lam, t))
        result = result * factor
        cum = cum + xj * xj
    return result[()]


def ball_norm(n, mu: float) -> float:
    """Squared L2 norm of the basis polynomial under the ball weight.

    Gamma factors are combined in log space; the Pochhammer products are
    formed directly (their bases may be negative for mu in (-1/2, 0), and the
    signs cancel against each other).
    """
    n = validate_multi_index(n)
    mu = _check_mu(mu)
    r = len(n)
    nn = total_degree(n)
    log_part = (0.5 * r * math.log(math.pi) + log_gamma(mu + 0.5)
                - log_gamma(mu + 0.5 * (r + 1) + nn))
    value = float(np.exp(log_part)) * pochhammer(mu + 0.5 * r, nn)
    for j in range(1, r + 1):
        nj = n[j - 1]
        tj = tail_sum(n, j)
        tj1 = tail_sum(n, j + 1)
        value *= (pochhammer(mu + 0.5 * (r - j), tj)
                  * pochhammer(2.0 * mu + 2.0 * tj1 + r - j, nj)
                  / (math.factorial(nj) * pochhammer(mu + 0.5 * (r - j + 1), tj)))
    return float(value)


def ball_operator_residual(n, mu: float, x, h: float) -> float:
    """Finite-difference residual of the ball eigenvalue equation at ``x``.

    The second-order operator is assembled exactly as displayed — a Laplacian
    minus the divergence of x_j (2 mu - 1 + x . grad) — by nesting central
    differences of step ``h``; no algebraic simplification is applied, so the
    check is independent of how the operator might be expanded.  Returns
    |L P + (|n| + r)(|n| + 2 mu - 1) P|, which is O(h^2) for eigenfunctions.
    """
    n = validate_multi_index(n)
    mu = _check_mu(mu)
    r = len(n)
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (r,):
        raise ValueError(f"point must be a vector of length {r}")
    if h <= 0:
        raise ValueError("step h must be positive")
    if np.linalg.norm(x) + 2.0 * h >= 1.0:
        raise DomainError("finite-difference stencil would leave the unit ball")

    def P(pt):
        return float(ball_basis_eval(n, mu, pt))

    def grad(pt):
        g = np.empty(r)
        for i in range(r):
            e = np.zeros(r)
            e[i] = h
            g[i] = (P(pt + e) - P(pt - e)) / (2.0 * h)
        return g

    def transport(pt, j):
        # x_j (2 mu - 1 + sum_i x_i d/dx_i) P at pt
        return pt[j] * ((2.0 * mu - 1.0) * P(pt) + float(np.dot(pt, grad(pt))))

    lap = 0.0
    div = 0.0
    p0 = P(x)
    for j in range(r):
        e = np.zeros(r)
        e[j] = h
        lap += (P(x + e) - 2.0 * p0 + P(x - e)) / (h * h)
        div += (transport(x + e, j) - transport(x - e, j)) / (2.0 * h)
    nn = total_degree(n)
    eigen = (nn + r) * (nn + 2.0 * mu - 1.0)
    return abs(lap - div + eigen * p0)
