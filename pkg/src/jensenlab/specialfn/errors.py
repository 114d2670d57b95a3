"""Exceptions raised by the special-function layer."""

from ..numeric import DomainError


class PoleError(DomainError):
    """The argument encloses a pole."""


class MethodDisagreement(ArithmeticError):
    """Two independent jet computations returned disjoint enclosures."""


class QuadratureTooCoarse(ArithmeticError):
    """The quadrature error bound could not be pushed below the target."""
