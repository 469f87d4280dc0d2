"""Orthogonal polynomials on the unit ball, their closed-form Fourier
transforms, and a quadrature oracle that machine-checks the identities."""

from .ball import (ball_basis_eval, ball_norm, ball_operator_residual,
                   ball_space_dim, tail_sum, validate_multi_index)
from .classical import (HahnParameters, continuous_hahn, gegenbauer,
                        gegenbauer_norm, gegenbauer_series,
                        hahn_orthogonality_constant, jacobi)
from .dfamily import (DParams, d_family_eval, d_family_eval_hahn,
                      d_orthogonality_constant)
from .errors import (DenominatorPoleError, DomainError,
                     NonFiniteIntegrandError, PoleError)
from .hypergeometric import HypergeometricSpec, hyp3f2_unit, pfq_terminating
from .quadrature import (QuadratureSpec, VerificationReport,
                         ball_inner_product_numeric, d_biorthogonality_integral,
                         fourier_numeric, hahn_orthogonality_integral,
                         integrate_line, parseval_check)
from .special import (beta, gamma, generalized_binomial, log_beta, log_gamma,
                      pochhammer)
from .tanh_family import (FamilyParams, family_eval, family_eval_peel_first,
                          family_eval_peel_last, fourier_closed_form,
                          fourier_via_recursion, tanh_ball_map, theta_factor,
                          theta_factor_hahn)

__version__ = "0.1.0"

__all__ = [
    "FamilyParams", "DParams", "HahnParameters", "HypergeometricSpec",
    "QuadratureSpec", "VerificationReport",
    "PoleError", "DenominatorPoleError", "DomainError", "NonFiniteIntegrandError",
    "log_gamma", "gamma", "beta", "log_beta", "pochhammer", "generalized_binomial",
    "pfq_terminating", "hyp3f2_unit",
    "jacobi", "gegenbauer", "gegenbauer_series", "gegenbauer_norm", "continuous_hahn",
    "hahn_orthogonality_constant",
    "tail_sum", "validate_multi_index", "ball_space_dim", "ball_basis_eval",
    "ball_norm", "ball_operator_residual",
    "tanh_ball_map", "family_eval", "family_eval_peel_first", "family_eval_peel_last",
    "theta_factor", "theta_factor_hahn", "fourier_closed_form", "fourier_via_recursion",
    "d_family_eval", "d_family_eval_hahn", "d_orthogonality_constant",
    "integrate_line", "fourier_numeric", "ball_inner_product_numeric",
    "hahn_orthogonality_integral", "d_biorthogonality_integral", "parseval_check",
    "__version__",
]
