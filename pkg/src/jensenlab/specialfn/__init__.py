"""Certified special functions: Gamma, zeta, the density Phi and the Xi jet."""

from .errors import MethodDisagreement, PoleError, QuadratureTooCoarse
from .gamma import gamma_ball, gamma_series, loggamma_series
from .phi import gauss_legendre, phi_density, phi_moments
from .xi import XiJetRequest, XiMethod, product_to_xi_derivatives, xi0_direct, xi_eval, xi_taylor
from .zeta import zeta_ball, zeta_series, zeta_sm1_ball

__all__ = [
    "MethodDisagreement",
    "PoleError",
    "QuadratureTooCoarse",
    "XiJetRequest",
    "XiMethod",
    "gamma_ball",
    "gamma_series",
    "gauss_legendre",
    "loggamma_series",
    "phi_density",
    "phi_moments",
    "product_to_xi_derivatives",
    "xi0_direct",
    "xi_eval",
    "xi_taylor",
    "zeta_ball",
    "zeta_series",
    "zeta_sm1_ball",
]
