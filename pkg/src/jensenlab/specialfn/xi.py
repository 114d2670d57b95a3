"""Taylor jets and point values of the Riemann Xi function.

``Xi(iz) = F(z)`` with ``F(z) = (z^2 - 1/4)/2 * pi^(-z/2 - 1/4) * Gamma(z/2 + 1/4) * zeta(1/2 + z)``.
Two independent routes to ``Xi^(k)(0)``:

* ``PHI``: ``Xi^(2m)(0) = (-1)^m * 4 * int_0^oo Phi(u) u^(2m) du`` by certified
  quadrature (see :mod:`.phi`);
* ``FACTORS``: multiply the Taylor series of the four factors of ``F`` at 0 and
  undo the substitution ``z = -i t``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Optional

from ..numeric import Ball, CBall, PrecisionExhausted
from ..poly import ParityError, TaylorJet
from .cache import cache_path, default_cache_dir, load_jet_values, store_jet_values
from .errors import MethodDisagreement
from .gamma import gamma_ball, gamma_series
from .phi import MomentPlan, phi_moments, plan_moments
from .series import s_mul
from .zeta import zeta_ball, zeta_series, zeta_sm1_ball

__all__ = [
    "CODE_VERSION",
    "XiJetRequest",
    "XiMethod",
    "product_to_xi_derivatives",
    "xi0_direct",
    "xi_eval",
    "xi_taylor",
]

CODE_VERSION = "1"


class XiMethod(enum.Enum):
    PHI = "phi"
    FACTORS = "factors"
    BOTH = "both"


@dataclass(frozen=True)
class XiJetRequest:
    """Parameters for :func:`xi_taylor`.

    ``nodes`` and ``u_max`` override the automatic quadrature plan (PHI only).
    ``cache_dir=None`` uses the default location; ``use_cache=False`` skips it.
    """

    M: int
    prec: int = 256
    method: XiMethod = XiMethod.PHI
    nodes: Optional[int] = None
    u_max: Optional[Fraction] = None
    cache_dir: Optional[Path] = None
    use_cache: bool = False

    def __post_init__(self):
        if self.M < 0:
            raise ValueError("M must be nonnegative")
        if self.prec < 64:
            raise ValueError("prec must be at least 64 bits")
        if self.u_max is not None and Fraction(self.u_max) <= 0:
            raise ValueError("u_max must be positive")
        if not isinstance(self.method, XiMethod):
            object.__setattr__(self, "method", XiMethod(self.method))


def product_to_xi_derivatives(coeffs, prec: int) -> list:
    """Turn Taylor coefficients ``a_k`` of ``F(z) = Xi(iz)`` into ``Xi^(k)(0)``.

    ``Xi(t) = F(-it)``, so ``Xi^(k)(0) = k! a_k (-i)^k``: even k pick up
    ``(-1)^(k/2)``; odd k must vanish by evenness and are stored as exact zeros.
    """
    out = []
    for k, a in enumerate(coeffs):
        if k % 2:
            if not a.contains_zero():
                raise ParityError(f"odd Taylor coefficient {k} excludes zero: {a!r}")
            out.append(Ball(0, 0, prec))
        else:
            v = a * factorial(k)
            out.append(Ball(-v if (k // 2) % 2 else v, 0, prec))
    return out


def _relative_ok(values, prec: int) -> int:
    """Bits missing before every even value has relative radius <= 2**-prec (0 if fine)."""
    worst = 0
    for v in values[::2]:
        if v.rad == 0:
            continue
        if v.contains_zero():
            return prec
        rel = math.log2(float(v.rad) / abs(float(v.mid))) if float(v.mid) != 0 else 0.0
        worst = max(worst, math.ceil(rel + prec))
    return worst


def _factors_once(M: int, wp: int) -> list:
    K = M + 1
    G = gamma_series(Fraction(1, 4), K, wp, scale=Fraction(1, 2))
    Z = zeta_series(Fraction(1, 2), K, wp)
    pi = Ball.pi(wp)
    L = pi.log().mul_2exp(-1)
    E = [(-(pi.log() * Fraction(1, 4))).exp()]
    for k in range(1, K):
        E.append(E[-1] * (-L) / k)
    prod = s_mul(s_mul(G, Z), E)
    # times (z^2 - 1/4)/2
    out = []
    for k in range(K):
        v = prod[k] * Fraction(-1, 8)
        if k >= 2:
            v = v + prod[k - 2].mul_2exp(-1)
        out.append(v)
    return out


def _xi_factors(M: int, prec: int) -> list:
    guard = 8 * M + 64
    for _ in range(6):
        wp = prec + guard
        vals = product_to_xi_derivatives(_factors_once(M, wp), prec + 8)
        missing = _relative_ok(vals, prec)
        if missing == 0:
            return vals
        guard += missing + 32
    raise PrecisionExhausted("factor-series jet did not reach the requested accuracy")


def _xi_phi(M: int, prec: int, nodes: Optional[int], u_max) -> list:
    M2 = M // 2 + 1
    plan = None
    if nodes is not None or u_max is not None:
        base = plan_moments(M2, prec)
        plan = MomentPlan(base.h, Fraction(u_max) if u_max is not None else base.U,
                          nodes if nodes is not None else base.nodes, base.y_max)
    moments, _ = phi_moments(M2, prec, plan)
    vals = []
    for k in range(M + 1):
        if k % 2:
            vals.append(Ball(0, 0, prec + 8))
        else:
            m = k // 2
            v = moments[m] * 4
            vals.append(-v if m % 2 else v)
    return vals


def _intersect_all(a, b) -> list:
    out = []
    for k, (x, y) in enumerate(zip(a, b)):
        if not x.overlaps(y):
            raise MethodDisagreement(f"order {k}: {x!r} and {y!r} are disjoint")
        out.append(x.intersect(y) if not (x.is_exact() and y.is_exact()) else x)
    return out


def _compute(req: XiJetRequest) -> list:
    if req.method is XiMethod.PHI:
        return _xi_phi(req.M, req.prec, req.nodes, req.u_max)
    if req.method is XiMethod.FACTORS:
        return _xi_factors(req.M, req.prec)
    return _intersect_all(_xi_phi(req.M, req.prec, req.nodes, req.u_max), _xi_factors(req.M, req.prec))


def xi_taylor(req: XiJetRequest) -> TaylorJet:
    """Certified jet ``values[k] ⊇ Xi^(k)(0)`` for ``k = 0..M``.

    Examples
    --------
    >>> jet = xi_taylor(XiJetRequest(M=2, prec=64))
    >>> round(float(jet.values[0]), 8)
    0.49712078
    """
    values = None
    path = None
    if req.use_cache:
        path = cache_path(req.cache_dir or default_cache_dir(), req.M, req.prec, req.method.value, CODE_VERSION)
        key = {"M": req.M, "prec": req.prec, "method": req.method.value, "version": CODE_VERSION}
        values = load_jet_values(path, key)
    if values is None:
        values = _compute(req)
        if path is not None:
            store_jet_values(path, values, {"M": req.M, "prec": req.prec, "method": req.method.value,
                                            "version": CODE_VERSION})
    return TaylorJet(tuple(values), parity="even", order_hint=1, label="Xi")


def xi0_direct(prec: int = 256) -> Ball:
    """``Xi(0) = -(1/8) pi^(-1/4) Gamma(1/4) zeta(1/2)`` from point evaluations."""
    wp = prec + 16
    g = gamma_ball(Fraction(1, 4), wp).re
    z = zeta_ball(Fraction(1, 2), wp).re
    c = (-(Ball.pi(wp).log() * Fraction(1, 4))).exp()
    return Ball(g * z * c * Fraction(-1, 8), 0, prec)


def xi_eval(t, prec: int = 256) -> CBall:
    """Enclosure of ``Xi(t)`` for real or complex ``t``.

    Uses ``Xi(t) = pi^(-s/2) Gamma(s/2 + 1) (s - 1) zeta(s)`` with
    ``s = 1/2 - i t``, a form without removable singularities; evenness
    lets us keep ``Re s >= 1/2``.
    """
    wp = prec + 20
    t = CBall.coerce(t, wp)
    if t.im.mid < 0:
        t = -t
    s = CBall(Ball(Fraction(1, 2), 0, wp) + t.im, -t.re)
    logpi = Ball.pi(wp).log()
    pref = (s * (-logpi)).mul_2exp(-1).exp()
    val = pref * gamma_ball(s.mul_2exp(-1) + 1, wp) * zeta_sm1_ball(s, wp)
    return CBall(Ball(val.re, 0, prec), Ball(val.im, 0, prec))
