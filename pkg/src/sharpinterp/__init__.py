"""Sharp constants and correction terms in L-infinity interpolation inequalities."""
from ._accel import backend
from .asympt import coeffs_for, em_direct, em_expansion, torus_constants, v_three_term, v_two_term
from .extremal import corrected_bound, d_of_lambda, sharp_constant, sphere2_h, sphere2_h_sup, torus_kn, v_of_d
from .green import ProblemSpec, beta2_constant, beta3_constant, evaluate
from .specfun import DomainError

__all__ = [
    "ProblemSpec",
    "DomainError",
    "evaluate",
    "beta2_constant",
    "beta3_constant",
    "coeffs_for",
    "v_two_term",
    "v_three_term",
    "torus_constants",
    "em_direct",
    "em_expansion",
    "d_of_lambda",
    "v_of_d",
    "sharp_constant",
    "corrected_bound",
    "sphere2_h",
    "sphere2_h_sup",
    "torus_kn",
    "backend",
]
