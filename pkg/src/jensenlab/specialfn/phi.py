"""The density Phi and rigorous Gauss-Legendre moments.

    Phi(u) = sum_{n>=1} (2 pi^2 n^4 e^(9u/2) - 3 pi n^2 e^(5u/2)) exp(-pi n^2 e^(2u))

``Xi(t) = 4 int_0^oo Phi(u) cos(u t) du``, so the even derivatives of Xi at 0
are signed moments of Phi.  Moments are computed panel by panel with
Gauss-Legendre rules whose nodes are certified by sign changes, with the
classical error bound for integrands analytic in a Bernstein ellipse, plus
an explicit bound on the tail beyond the last panel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
import numpy as np

from ..numeric import Ball, Sign, ball_sign, q_down, q_up
from .errors import QuadratureTooCoarse

__all__ = ["phi_density", "phi_bound_complex", "gauss_legendre", "phi_moments", "plan_moments", "MomentPlan"]

_UP = gmpy2.context(precision=64, round=gmpy2.RoundUp)
_DOWN = gmpy2.context(precision=64, round=gmpy2.RoundDown)


def _tail_from(n: int, x_lo, coef_up):
    """Bound on sum_{k>n} k^4 exp(-pi k^2 x) * coef for x >= x_lo >= 1/4, n >= 1.

    Consecutive terms shrink by at least a factor 2 there, so the sum is at
    most twice its first term.
    """
    k = n + 1
    val = _UP.mul(_UP.pow(k, 4), _UP.exp(_UP.minus(_DOWN.mul(_DOWN.mul(_DOWN.const_pi(), k * k), x_lo))))
    return _UP.mul(2, _UP.mul(val, coef_up))


def phi_density(u, prec: int = 256) -> Ball:
    """Certified enclosure of ``Phi(u)`` for ``u >= 0``.

    Examples
    --------
    >>> float(phi_density(0, 64))  # doctest: +ELLIPSIS
    0.446...
    """
    wp = prec + 16
    u = Ball.coerce(u, wp)
    if u.lower() < -0.5:
        raise ValueError("phi_density needs u >= 0")
    pi = Ball.pi(wp)
    x = (u.mul_2exp(1)).exp()
    e_half = (u.mul_2exp(-1)).exp()
    e5 = e_half ** 5
    e9 = e5 * e_half ** 4
    a = pi.sqr().mul_2exp(1) * e9
    b = pi * 3 * e5
    q = (-(pi * x)).exp()
    x_lo = _DOWN.exp(_DOWN.mul(2, u.lower()))
    coef = _UP.add(a.mag(), b.mag())
    total = Ball(0, 0, wp)
    q2 = q.sqr()
    qn = q                      # exp(-pi n^2 x)
    step = q * q2               # exp(-pi (2n+1) x)
    first = None
    n = 1
    while True:
        term = (a * (n ** 4) - b * (n * n)) * qn
        total = total + term
        if first is None:
            first = term.mag()
        tail = _tail_from(n, x_lo, coef)
        if n >= 2 and tail < _UP.mul(first, gmpy2.mpfr(2) ** (-wp)):
            break
        qn = qn * step
        step = step * q2
        n += 1
    return Ball(total.widen(tail), 0, prec)


def phi_bound_complex(x_lo, x_hi, y_max, power: int = 0):
    """Upper bound on ``|Phi(u) u^power|`` over ``x_lo <= Re u <= x_hi``, ``|Im u| <= y_max``.

    Needs ``y_max < pi/4`` so that ``Re e^(2u)`` stays positive.
    """
    p = 64
    X_lo, X_hi, Y = (Ball(q, 0, p) for q in (Fraction(x_lo), Fraction(x_hi), Fraction(y_max)))
    c = (X_lo.mul_2exp(1)).exp() * (Y.mul_2exp(1)).cos()
    if c.lower() <= 0:
        raise ValueError("region reaches the line where Re e^(2u) = 0")
    c_lo = c.lower()
    pi = Ball.pi(p)
    A = (pi.sqr().mul_2exp(1) * (X_hi * Fraction(9, 2)).exp()).upper()
    B = ((pi * 3) * (X_hi * Fraction(5, 2)).exp()).upper()
    pi_lo = _DOWN.const_pi()
    total = gmpy2.mpfr(0)
    n = 1
    while True:
        t = _UP.mul(_UP.add(_UP.mul(A, n ** 4), _UP.mul(B, n * n)),
                    _UP.exp(_UP.minus(_DOWN.mul(_DOWN.mul(pi_lo, n * n), c_lo))))
        total = _UP.add(total, t)
        # ratio of consecutive terms <= ((n+1)/n)^4 exp(-pi (2n+1) c)
        ratio = _UP.mul(_UP.pow(_UP.div(n + 1, n), 4), _UP.exp(_UP.minus(_DOWN.mul(_DOWN.mul(pi_lo, 2 * n + 1), c_lo))))
        if ratio <= 0.5 and t < _UP.mul(total, gmpy2.mpfr(2) ** -40):
            total = _UP.add(total, _UP.mul(2, _UP.mul(t, ratio)))
            break
        n += 1
    if power:
        r = max(abs(Fraction(x_lo)), abs(Fraction(x_hi)))
        mod = _UP.sqrt(_UP.add(_UP.square(q_up(r)), _UP.square(q_up(Fraction(y_max)))))
        total = _UP.mul(total, _UP.pow(mod, power))
    return total


# ---------------------------------------------------------------------------
# Gauss-Legendre rules


def _legendre_pair(N: int, x):
    """(P_N(x), P_{N-1}(x)) by the three-term recurrence (mpfr or Ball input)."""
    p0, p1 = 1, x
    for k in range(1, N):
        p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
    return p1, p0


@lru_cache(maxsize=32)
def gauss_legendre(N: int, wp: int):
    """Certified N-point Gauss-Legendre rule on [-1, 1] at ``wp`` bits.

    Returns a tuple of (node, weight) Ball pairs.  Nodes are Newton-refined
    at extended precision and certified by a sign change of ``P_N`` across
    a tiny interval; the weights ``2 / ((1 - x^2) P_N'(x)^2)`` are evaluated
    on those intervals.
    """
    ep = wp + int(2.6 * N) + 100
    eta_exp = -(wp + int(1.3 * N) + 40)
    eta = Fraction(1, 2 ** -eta_exp)
    half = (N + 1) // 2
    guesses, _ = np.polynomial.legendre.leggauss(N)
    nodes = []
    with gmpy2.context(precision=ep + 20):
        for i in range(half):
            x = gmpy2.mpfr(float(guesses[N - 1 - i]))
            if N % 2 == 1 and i == half - 1:
                x = gmpy2.mpfr(0)
            else:
                for _ in range(60):
                    p, q = _legendre_pair(N, x)
                    dp = N * (x * p - q) / (x * x - 1)
                    dx = p / dp
                    x -= dx
                    if dx == 0 or abs(dx) < gmpy2.mpfr(2) ** (eta_exp - 20):
                        break
            nodes.append(x)
    pairs = []
    prev_lo = None
    for x in nodes:
        X = Ball(x, 0, ep)
        if x == 0:
            p_mid, _ = _legendre_pair(N, X)
            if not p_mid.is_zero() and not p_mid.contains_zero():
                raise QuadratureTooCoarse("middle node is not a root")
            Xc = Ball(0, 0, ep)
        else:
            lo, hi = X - eta, X + eta
            s_lo = ball_sign(_legendre_pair(N, Ball(lo.mid, 0, ep))[0])
            s_hi = ball_sign(_legendre_pair(N, Ball(hi.mid, 0, ep))[0])
            if Sign.STRADDLES in (s_lo, s_hi) or s_lo == s_hi:
                raise QuadratureTooCoarse("could not certify a Gauss-Legendre node")
            Xc = Ball(x, eta + Fraction(1, 2 ** (ep - 2)), ep)
        if prev_lo is not None and not Xc.upper() < prev_lo:
            raise QuadratureTooCoarse("node enclosures overlap")
        prev_lo = Xc.lower()
        p, q = _legendre_pair(N, Xc)
        dp = N * (Xc * p - q) / (Xc.sqr() - 1)
        w = 2 / ((1 - Xc.sqr()) * dp.sqr())
        pairs.append((Ball(Xc, 0, wp), Ball(w, 0, wp)))
    if prev_lo is not None and not prev_lo > 0 and nodes[-1] != 0:
        raise QuadratureTooCoarse("node enclosure crosses 0")
    full = [(-x, w) for x, w in pairs if not x.is_zero()]
    full += list(reversed(pairs))
    return tuple(full)


# ---------------------------------------------------------------------------
# moments


@dataclass(frozen=True)
class MomentPlan:
    """Panel layout for the moment integrals over ``[0, U]``."""

    h: Fraction = Fraction(1, 4)
    U: Fraction = Fraction(0)
    nodes: int = 0
    y_max: Fraction = Fraction(7, 20)


def _ellipse(h: Fraction, y_max: Fraction):
    """Exact (rho, A, B) with ``h * B <= y_max``; A, B are the ellipse semi-axes."""
    rho = Fraction(math.exp(math.asinh(float(y_max / h)))).limit_denominator(10 ** 6)
    while h * (rho - 1 / rho) / 2 > y_max:
        rho -= Fraction(1, 10 ** 6)
    return rho, (rho + 1 / rho) / 2, (rho - 1 / rho) / 2


def _steer_moments(orders: int, U: float):
    """Double-precision moment estimates (steering only)."""
    x, w = np.polynomial.legendre.leggauss(200)
    u = (x + 1) * U / 2
    n = np.arange(1, 12)[:, None]
    with np.errstate(under="ignore", over="ignore"):
        phi = ((2 * np.pi ** 2 * n ** 4 * np.exp(4.5 * u) - 3 * np.pi * n ** 2 * np.exp(2.5 * u))
               * np.exp(-np.pi * n ** 2 * np.exp(2 * u))).sum(axis=0)
    out = []
    for m in range(orders):
        out.append(float(np.sum(w * phi * u ** (2 * m)) * U / 2))
    return out


def _tail_bound(U: Fraction, m: int):
    """Bound on int_U^oo |Phi(u)| u^(2m) du for U >= 1."""
    Ub = Ball(U, 0, 64)
    x = (Ub.mul_2exp(1)).exp()
    pi = Ball.pi(64)
    lam = (pi.mul_2exp(1) * x - Fraction(9, 2) - Ball(2 * m, 0, 64) / Ub).lower()
    if lam <= 0:
        return gmpy2.inf(1)
    g = (pi.sqr().mul_2exp(1) + pi * 3) * Fraction(101, 100) * x ** 2 * (x.sqrt()).sqrt() * (-(pi * x)).exp()
    g = g * Ub ** (2 * m)
    return _UP.div(g.upper(), lam)


def plan_moments(M2: int, prec: int) -> MomentPlan:
    """Choose the cutoff U and node count for relative accuracy ``2**-prec``."""
    estimates = _steer_moments(M2, 4.0)
    h = Fraction(1, 4)
    y_max = Fraction(7, 20)
    U = Fraction(1)
    while any(_tail_bound(U, m) > abs(estimates[m]) * 2.0 ** (-(prec + 12)) for m in range(M2)):
        U += 2 * h
    rho, A, B = _ellipse(h, y_max)
    log_rho = math.log(float(rho))
    worst = 0.0
    panels = int(U / (2 * h))
    for m in range(M2):
        err_scale = 0.0
        for p in range(panels):
            c = h * (2 * p + 1)
            Mb = phi_bound_complex(c - h * A, c + h * A, h * B, 2 * m)
            err_scale += float(h) * 64 / 15 * float(Mb) / float(rho * rho - 1)
        need = math.log(err_scale / (abs(estimates[m]) * 2.0 ** (-(prec + 12)))) / (2 * log_rho)
        worst = max(worst, need)
    N = max(8, int(math.ceil(worst)) + 2)
    return MomentPlan(h, U, N, y_max)


def phi_moments(M2: int, prec: int, plan: MomentPlan | None = None):
    """Enclosures of ``I_m = int_0^oo Phi(u) u^(2m) du`` for ``m < M2``.

    Returns (moments, plan).  Raises QuadratureTooCoarse if the rigorous
    error bound exceeds the relative target ``2**-prec``.
    """
    if plan is None:
        plan = plan_moments(M2, prec)
    wp = prec + 40
    h, U, N, y_max = plan.h, plan.U, plan.nodes, plan.y_max
    rule = gauss_legendre(N, wp)
    panels = int(U / (2 * h))
    rho, A, B = _ellipse(h, y_max)
    acc = [Ball(0, 0, wp) for _ in range(M2)]
    hb = Ball(h, 0, wp)
    errs = [gmpy2.mpfr(0)] * M2
    for p in range(panels):
        c = h * (2 * p + 1)
        cb = Ball(c, 0, wp)
        for x, w in rule:
            u = cb + hb * x
            val = phi_density(u, wp) * w * hb
            u2 = u.sqr()
            for m in range(M2):
                acc[m] = acc[m] + val
                val = val * u2
        ef = _UP.div(_UP.mul(q_up(Fraction(64, 15) * h), _UP.pow(q_up(1 / rho), 2 * N)), q_down(rho * rho - 1))
        for m in range(M2):
            Mb = phi_bound_complex(c - h * A, c + h * A, h * B, 2 * m)
            errs[m] = _UP.add(errs[m], _UP.mul(ef, Mb))
    out = []
    for m in range(M2):
        total = acc[m].widen(_UP.add(errs[m], _tail_bound(U, m)))
        if total.rad > _UP.mul(total.mid, gmpy2.mpfr(2) ** (-prec)):
            raise QuadratureTooCoarse(f"moment {m}: radius {float(total.rad):.3g} above target")
        out.append(Ball(total, 0, prec + 8))
    return out, plan
