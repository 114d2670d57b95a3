"""Riemann zeta enclosures by Euler-Maclaurin summation.

    zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
              + sum_{k=1}^{M} B_2k/(2k)! (s)_(2k-1) N^(-s-2k+1) + R

with ``(s)_j`` the rising factorial and, for ``Re s + 2M - 1 > 0``,

    |R| <= 4 |(s)_2M| / (2 pi)^2M * N^(1 - Re s - 2M) / (Re s + 2M - 1).
"""

from __future__ import annotations

import math
from fractions import Fraction

import gmpy2

from ..numeric import Ball, CBall, q_down, q_up
from .errors import PoleError
from .series import bernoulli, s_add, s_linear_mul, s_mul, s_scale

__all__ = ["zeta_ball", "zeta_sm1_ball", "zeta_series", "em_parameters"]

_UP = gmpy2.context(precision=64, round=gmpy2.RoundUp)
_DOWN = gmpy2.context(precision=64, round=gmpy2.RoundDown)
_TWO_PI_DOWN = _DOWN.mul(2, _DOWN.const_pi())


def _remainder_bound(abs_t, sigma_lo, N: int, M: int):
    """Upper bound on |R| given ``abs_t[j] >= |s + j|`` and ``Re s >= sigma_lo``."""
    den = _DOWN.add(sigma_lo, 2 * M - 1)
    if den <= 0:
        return gmpy2.inf(1)
    poch = _UP.plus(1)
    for j in range(2 * M):
        poch = _UP.mul(poch, abs_t[j])
    val = _UP.mul(4, _UP.div(poch, _DOWN.pow(_TWO_PI_DOWN, 2 * M)))
    val = _UP.mul(val, _UP.pow(q_up(N), _UP.sub(1, _DOWN.add(sigma_lo, 2 * M))))
    return _UP.div(val, den)


def em_parameters(sigma_lo: float, sigma_hi: float, t_abs: float, wp: int):
    """Pick (N, M) so that the Euler-Maclaurin remainder drops below ``2**-wp``.

    Floats steer the search only; the chosen pair is re-bounded rigorously.
    """
    target = -wp * math.log(2)
    N = max(8, int(0.12 * wp + t_abs / 4))
    while True:
        log_b = math.log(4) + (1 - sigma_lo) * math.log(N) - math.log(max(sigma_lo + 1, 1e-3))
        best = (math.inf, None)
        M = 0
        while M < 4 * wp + 100:
            for j in (2 * M, 2 * M + 1):
                log_b += math.log(math.hypot(max(abs(sigma_hi + j), abs(sigma_lo + j)), t_abs) + 1e-300)
            log_b -= 2 * math.log(2 * math.pi * N)
            M += 1
            if sigma_lo + 2 * M - 1 > 0.5 and log_b < best[0]:
                best = (log_b, M)
            if log_b > best[0] + 20:
                break
        if best[1] is not None and best[0] < target - 10:
            return N, best[1]
        N = int(N * 1.3) + 2


def _poch_abs(sigma_lo, sigma_hi, t_abs, count: int):
    """Upper bounds on |s + j| for j < count."""
    out = []
    for j in range(count):
        re = max(abs(_UP.add(sigma_hi, j)), abs(_UP.add(sigma_lo, j)))
        out.append(_UP.sqrt(_UP.add(_UP.square(re), _UP.square(t_abs))))
    return out


def _em_core(s: CBall, wp: int):
    """Return (S, P, R) with zeta(s) = S + P/(s-1) + R, where P = N^(1-s)."""
    sig_lo, sig_hi = s.re.lower(), s.re.upper()
    t_abs = s.im.mag()
    N, M = em_parameters(float(sig_lo), float(sig_hi), float(t_abs), wp)
    bound = _remainder_bound(_poch_abs(sig_lo, sig_hi, t_abs, 2 * M), sig_lo, N, M)
    real = s.im.is_zero()
    S = CBall(0, 0, wp)
    for n in range(1, N):
        S = S + _npow(n, -s, wp, real)
    nps = _npow(N, -s, wp, real)
    S = S + nps.mul_2exp(-1)
    poch = s
    invN = Ball(Fraction(1, N), 0, wp)
    invN2 = invN.sqr()
    npow_k = invN
    acc = CBall(0, 0, wp)
    for k in range(1, M + 1):
        c = Ball(bernoulli(2 * k) / math.factorial(2 * k), 0, wp)
        acc = acc + poch * (npow_k * c)
        poch = poch * (s + 2 * k - 1) * (s + 2 * k)
        npow_k = npow_k * invN2
    S = S + nps * acc
    P = nps * N
    return S, P, bound


def _npow(n: int, e: CBall, wp: int, real: bool) -> CBall:
    if n == 1:
        return CBall(1, 0, wp)
    ln = Ball(n, 0, wp).log()
    if real:
        return CBall((e.re * ln).exp(), 0, wp)
    return (e * ln).exp()


def zeta_ball(s, prec: int = 256) -> CBall:
    """Certified enclosure of ``zeta(s)``; PoleError if ``s`` encloses 1.

    Examples
    --------
    >>> z = zeta_ball(0, 64)
    >>> z.re.contains(Fraction(-1, 2))
    True
    """
    wp = prec + 20
    s = CBall.coerce(s, wp)
    sm1 = s - 1
    if sm1.re.contains_zero() and sm1.im.contains_zero():
        raise PoleError("zeta has a pole at s = 1")
    S, P, bound = _em_core(s, wp)
    z = S + P / sm1
    return CBall(z.re.widen(bound), z.im.widen(bound))


def zeta_sm1_ball(s, prec: int = 256) -> CBall:
    """Enclosure of the entire function ``(s - 1) zeta(s)``."""
    wp = prec + 20
    s = CBall.coerce(s, wp)
    S, P, bound = _em_core(s, wp)
    sm1 = s - 1
    z = sm1 * S + P
    scale = _UP.mul(bound, abs(sm1).upper())
    return CBall(z.re.widen(scale), z.im.widen(scale))


def zeta_series(s0, K: int, wp: int, rho=Fraction(1)):
    """First ``K`` Taylor coefficients of ``zeta(s0 + eps)`` at real ``s0 != 1``.

    The pole sits in an explicit term whose series is exact, so ``rho`` may
    exceed ``|s0 - 1|``; only the remainder (an entire function of ``s``) is
    bounded on ``|eps| <= rho`` and converted with Cauchy's estimate.
    """
    s0 = Fraction(s0)
    rho = Fraction(rho)
    if s0 == 1:
        raise PoleError("zeta has a pole at s = 1")
    sig_lo = s0 - rho
    sig_hi = s0 + rho
    N, M = em_parameters(float(sig_lo), float(sig_hi), float(rho), wp)
    lo_m, hi_m = q_down(sig_lo), q_up(sig_hi)
    bound = _remainder_bound(_poch_abs(lo_m, hi_m, q_up(rho), 2 * M), lo_m, N, M)
    S0 = Ball(s0, 0, wp)

    def npow_series(n: int):
        # n^(-s0-eps) = n^-s0 * sum (-log n)^k eps^k / k!
        ln = Ball(n, 0, wp).log()
        base = (-(S0 * ln)).exp()
        out = [base]
        for k in range(1, K):
            out.append(out[-1] * ln / (-k))
        return out

    total = [Ball(0, 0, wp)] * K
    for n in range(1, N):
        total = s_add(total, npow_series(n))
    EN = npow_series(N)
    total = s_add(total, s_scale(EN, Fraction(1, 2)))
    # N^(1-s)/(s-1): N * EN times 1/(s0 - 1 + eps)
    c = s0 - 1
    inv = [Ball((-1) ** k / c ** (k + 1), 0, wp) for k in range(K)]
    total = s_add(total, s_scale(s_mul(EN, inv), N))
    # Bernoulli corrections, Pochhammer series built one linear factor at a time
    poch = [S0, Ball(1, 0, wp)] + [Ball(0, 0, wp)] * (K - 2) if K > 1 else [S0]
    invN2 = Fraction(1, N * N)
    acc = [Ball(0, 0, wp)] * K
    npk = Fraction(1, N)
    for k in range(1, M + 1):
        coeff = Ball(bernoulli(2 * k) / math.factorial(2 * k) * npk, 0, wp)
        acc = s_add(acc, s_scale(poch, coeff))
        poch = s_linear_mul(s_linear_mul(poch, S0 + (2 * k - 1)), S0 + 2 * k)
        npk *= invN2
    total = s_add(total, s_mul(EN, acc))
    rpow = Fraction(1)
    out = []
    for k in range(K):
        out.append(total[k].widen(_UP.div(bound, q_down(rpow))))
        rpow *= rho
    return out
