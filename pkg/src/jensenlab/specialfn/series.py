"""Truncated power series with Ball coefficients.

A series is a plain list ``[c0, c1, ..., c_{K-1}]``; every operation keeps
the length of its first argument.  Remainder terms are handled by the
callers, which add Cauchy bounds as radii.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath

from ..numeric import Ball

__all__ = ["bernoulli", "s_add", "s_mul", "s_scale", "s_exp", "s_linear_mul", "s_rescale", "s_widen"]


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number ``B_n`` (``B_1 = -1/2``)."""
    p, q = mpmath.bernfrac(n)
    return Fraction(int(p), int(q))


def s_add(a, b):
    return [x + y for x, y in zip(a, b)]


def s_scale(a, c):
    return [x * c for x in a]


def s_mul(a, b):
    K = len(a)
    out = []
    for k in range(K):
        acc = a[0] * b[k]
        for j in range(1, k + 1):
            acc = acc + a[j] * b[k - j]
        out.append(acc)
    return out


def s_linear_mul(a, c0, c1=1):
    """Multiply by ``c0 + c1 * eps``."""
    return [a[0] * c0] + [a[k] * c0 + a[k - 1] * c1 for k in range(1, len(a))]


def s_exp(a):
    """``exp`` of a series via ``k e_k = sum_j j a_j e_{k-j}``."""
    K = len(a)
    e = [a[0].exp()]
    for k in range(1, K):
        acc = a[1] * e[k - 1]
        for j in range(2, k + 1):
            acc = acc + (a[j] * e[k - j]) * j
        e.append(acc / k)
    return e


def s_rescale(a, c):
    """Coefficients of ``f(c * eps)``."""
    out, p = [], Ball(1, 0, a[0].prec)
    for x in a:
        out.append(x * p)
        p = p * c
    return out


def s_widen(a, bounds):
    """Add a per-coefficient absolute error bound."""
    return [x.widen(b) for x, b in zip(a, bounds)]
