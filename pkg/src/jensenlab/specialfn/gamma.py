"""Gamma function enclosures from the shifted Stirling series.

For ``Re w > 0`` the Stirling series

    log Gamma(w) = (w - 1/2) log w - w + log(2 pi)/2
                   + sum_{k<K} B_2k / (2k (2k-1) w^(2k-1)) + R_K(w)

has ``|R_K(w)| <= |B_2K| / (2K (2K-1) |w|^(2K-1)) * sec(arg(w)/2)^(2K)``.
Arguments are first shifted right by an integer ``N`` so that ``|w|`` is
large, and the recurrence ``Gamma(z) = Gamma(z + N) / prod_{j<N}(z + j)``
brings the value back.
"""

from __future__ import annotations

import math
from fractions import Fraction

import gmpy2

from ..numeric import Ball, CBall, DomainError, q_down, q_up
from .errors import PoleError
from .series import bernoulli, s_exp, s_linear_mul, s_rescale

__all__ = ["gamma_ball", "loggamma_ball", "loggamma_series", "gamma_series"]

_UP = gmpy2.context(precision=64, round=gmpy2.RoundUp)
_DOWN = gmpy2.context(precision=64, round=gmpy2.RoundDown)


def _shift_for(x: float, wp: int) -> int:
    """Shift so that the shifted real part is about ``0.2 * wp + 10``."""
    target = 0.2 * wp + 10
    return max(0, math.ceil(target - x))


def _stirling_terms(absw_lower, sec2_upper, wp: int):
    """Smallest K whose remainder bound is below ``2**-wp``; returns (K, bound)."""
    for K in range(1, 4 * wp):
        b = abs(bernoulli(2 * K))
        bound = _UP.mul(
            q_up(b / (2 * K * (2 * K - 1))),
            _UP.div(_UP.pow(sec2_upper, K), _down_pow(absw_lower, 2 * K - 1)),
        )
        if bound < gmpy2.mpfr(2) ** (-wp):
            return K, bound
    raise DomainError("Stirling series did not reach the requested accuracy")


def _down_pow(x, n):
    return _DOWN.pow(x, n)


def loggamma_ball(w: CBall, wp: int) -> CBall:
    """Stirling evaluation of ``log Gamma(w)``; needs ``Re w`` large and positive."""
    w = CBall.coerce(w, wp)
    re_lo = w.re.lower()
    if re_lo <= 1:
        raise DomainError("loggamma_ball needs a shifted argument")
    absw = abs(w)
    absw_lo = absw.lower()
    # sec^2(arg/2) = 2|w| / (|w| + Re w)
    sec2 = _UP.div(_UP.mul(2, absw.upper()), _DOWN.add(absw_lo, re_lo))
    K, bound = _stirling_terms(absw_lo, sec2, wp)
    logw = w.log()
    acc = (w - Fraction(1, 2)) * logw - w + (Ball.pi(wp).mul_2exp(1)).log().mul_2exp(-1)
    inv = 1 / w
    inv2 = inv.sqr()
    p = inv
    for k in range(1, K):
        b = bernoulli(2 * k)
        acc = acc + p * Ball(b / (2 * k * (2 * k - 1)), 0, wp)
        p = p * inv2
    return CBall(acc.re.widen(bound), acc.im.widen(bound))


def gamma_ball(z, prec: int = 256) -> CBall:
    """Certified enclosure of ``Gamma(z)`` for real or complex ``z``.

    Raises PoleError when ``z`` encloses a nonpositive integer.

    Examples
    --------
    >>> g = gamma_ball(1, 64)
    >>> g.re.contains(1)
    True
    """
    wp = prec + 30
    z = CBall.coerce(z, wp)
    if z.im.is_zero() and z.re.is_exact() and z.re.mid == int(z.re.mid) and z.re.mid <= 0:
        raise PoleError(f"Gamma has a pole at {int(z.re.mid)}")
    N = _shift_for(float(z.re.mid) - float(z.re.rad), wp)
    den = CBall(1, 0, wp)
    for j in range(N):
        f = z + j
        if f.re.contains_zero() and f.im.contains_zero():
            raise PoleError("argument encloses a pole of Gamma")
        den = den * f
    lg = loggamma_ball(z + N, wp)
    try:
        return lg.exp() / den
    except DomainError as exc:
        raise PoleError("argument too close to a pole of Gamma") from exc


def loggamma_series(a, K: int, wp: int, rho=Fraction(1)):
    """First ``K`` Taylor coefficients of ``log Gamma(a + eps)`` at real ``a > 0``.

    The Stirling remainder is bounded on ``|eps| <= rho`` and turned into
    coefficient bounds with Cauchy's estimate.
    """
    a = Fraction(a)
    rho = Fraction(rho)
    N = _shift_for(float(a), wp) + math.ceil(rho)
    x0 = a + N
    lo = q_down(x0 - rho)
    sec2 = q_up((x0 + rho) / x0)
    Kst, bound = _stirling_terms(lo, sec2, wp)

    X = Ball(x0, 0, wp)
    inv = 1 / X
    zero = Ball(0, 0, wp)
    # log(x0 + eps)
    logw = [X.log()]
    p = Ball(1, 0, wp)
    for k in range(1, K):
        p = p * inv
        logw.append(p / (k if k % 2 else -k))
    out = s_linear_mul(logw, X - Fraction(1, 2), 1)
    out[0] = out[0] - X + (Ball.pi(wp).mul_2exp(1)).log().mul_2exp(-1)
    if K > 1:
        out[1] = out[1] - 1
    # sum_k B_2k/(2k(2k-1)) (x0 + eps)^(1-2k), coefficients via binomial series
    inv_pows = [Ball(1, 0, wp)]
    for _ in range(2 * Kst + K):
        inv_pows.append(inv_pows[-1] * inv)
    for k in range(1, Kst):
        q = 2 * k - 1
        c = bernoulli(2 * k) / (2 * k * (2 * k - 1))
        binom = 1
        for j in range(K):
            term = inv_pows[q + j] * Ball(c * binom * (-1) ** j, 0, wp)
            out[j] = out[j] + term
            binom = binom * (q + j) // (j + 1)
    # Cauchy: |coefficient_j of R| <= max|R| / rho^j
    rpow = Fraction(1)
    for j in range(K):
        out[j] = out[j].widen(_UP.div(bound, q_down(rpow)))
        rpow *= rho
    # subtract log(a + j + eps) for j < N
    sums = [zero] * K
    for j in range(N):
        b = Ball(a + j, 0, wp)
        sums[0] = sums[0] + b.log()
        ib = 1 / b
        p = Ball(1, 0, wp)
        for k in range(1, K):
            p = p * ib
            sums[k] = sums[k] + (p / k if k % 2 else -(p / k))
    return [o - s for o, s in zip(out, sums)]


def gamma_series(a, K: int, wp: int, scale=1):
    """Taylor coefficients of ``Gamma(a + scale * z)`` in ``z``."""
    coeffs = s_exp(loggamma_series(a, K, wp))
    if scale != 1:
        coeffs = s_rescale(coeffs, Ball(Fraction(scale), 0, wp))
    return coeffs
