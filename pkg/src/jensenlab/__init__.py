"""Certified numerics for Jensen polynomials and hyperbolicity.

Subpackages and modules:

``numeric``     ball arithmetic on gmpy2 (real and complex balls)
``poly``        rational and ball polynomials, Taylor jets, Jensen polynomials
``roots``       Sturm counting, certified root enclosures, region membership
``specialfn``   Gamma, zeta and the Riemann Xi function with certified error
``theorems``    randomized and constructive verification harnesses
``cli``         the ``jensenlab`` command
"""

from .numeric import Ball, CBall
from .poly import RealPoly, TaylorJet, compose_obreschkoff, half_form, jensen, reverse
from .roots import Status, all_roots, is_hyperbolic

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "CBall",
    "RealPoly",
    "Status",
    "TaylorJet",
    "all_roots",
    "compose_obreschkoff",
    "half_form",
    "is_hyperbolic",
    "jensen",
    "reverse",
]
