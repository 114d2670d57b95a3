"""Midpoint-radius ball arithmetic and exact rationals.

Every inexact quantity in the package is a :class:`Ball` (real) or a
:class:`CBall` (complex, rectangular).  Midpoints are MPFR numbers rounded to
nearest at the working precision; radii are low-precision MPFR numbers that
are always rounded *up*, so the represented interval ``[mid - rad, mid + rad]``
contains the exact result of every operation applied to any points of the
operand intervals.

MPFR guarantees correct rounding for the elementary functions, so the
rounding error of a midpoint ``m`` computed at ``p`` bits is bounded by
``|m| * 2**(1 - p)``.  Propagated error uses the usual first-order bounds with
the derivative maximised over the input interval.

Exact arithmetic uses :class:`fractions.Fraction` (always in lowest terms).
"""

from __future__ import annotations

import enum
import threading
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

import gmpy2
from gmpy2 import mpfr, mpq, mpz

__all__ = [
    "DEFAULT_PREC",
    "Ball",
    "CBall",
    "DomainError",
    "PrecisionExhausted",
    "Rat",
    "Sign",
    "as_fraction",
    "ball_arith",
    "ball_sign",
]

DEFAULT_PREC = 256
MIN_PREC = 16
RAD_PREC = 64

Rat = Fraction


class DomainError(ValueError):
    """An operation was applied outside its mathematical domain."""


class PrecisionExhausted(ArithmeticError):
    """A radius could not be kept finite."""


class Sign(enum.Enum):
    NEGATIVE = -1
    STRADDLES = 0
    POSITIVE = 1


@lru_cache(maxsize=None)
def _near(prec: int):
    return gmpy2.context(precision=prec, round=gmpy2.RoundToNearest)


@lru_cache(maxsize=None)
def _down_ctx(prec: int):
    return gmpy2.context(precision=prec, round=gmpy2.RoundDown)


@lru_cache(maxsize=None)
def _up_ctx(prec: int):
    return gmpy2.context(precision=prec, round=gmpy2.RoundUp)


_FLAGGED = threading.local()


def _flagged(prec: int):
    """Per-thread round-to-nearest context whose inexact flag we may reset."""
    cache = getattr(_FLAGGED, "ctxs", None)
    if cache is None:
        cache = _FLAGGED.ctxs = {}
    ctx = cache.get(prec)
    if ctx is None:
        ctx = cache[prec] = gmpy2.context(precision=prec, round=gmpy2.RoundToNearest)
    return ctx


def _op(name: str, prec: int, *args):
    """Midpoint of an arithmetic op and its rounding error (0 when MPFR was exact)."""
    ctx = _flagged(prec)
    ctx.clear_flags()
    m = getattr(ctx, name)(*args)
    return m, (_rnd(m, prec) if ctx.inexact else _ZERO_RAD)


_UP = _up_ctx(RAD_PREC)
_DOWN = _down_ctx(RAD_PREC)
_ZERO_RAD = mpfr(0, RAD_PREC)


def mabs(x):
    """Exact ``|x|`` of an MPFR value (plain ``abs`` rounds to the global context)."""
    return _near(x.precision).abs(x)


def mneg(x):
    """Exact ``-x`` of an MPFR value."""
    return _near(x.precision).minus(x)


def _rnd(m, prec: int):
    """Upper bound on the rounding error of a midpoint computed at ``prec``."""
    if m == 0:
        return _ZERO_RAD
    return _UP.mul_2exp(mabs(m), 1 - prec)


def as_fraction(x) -> Fraction:
    """Exact conversion of an int, Fraction, float, decimal string or MPFR value."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, mpz)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, (mpfr, mpq)):
        q = mpq(x)
        return Fraction(int(q.numerator), int(q.denominator))
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _to_mpq(x):
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def _from_exact(x, prec: int):
    """Round an exact number to ``prec`` bits; return (mid, err)."""
    if isinstance(x, mpfr):
        if x.precision <= prec:
            return mpfr(x, prec), _ZERO_RAD
        m = _near(prec).plus(x)
        return m, _rnd(m, prec)
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, float):
        x = Fraction(x)
    if isinstance(x, (int, mpz)):
        q = mpq(int(x))
    elif isinstance(x, (Fraction, Rational)):
        q = mpq(x.numerator, x.denominator)
    elif isinstance(x, mpq):
        q = x
    else:
        raise TypeError(f"cannot build a Ball from {type(x).__name__}")
    m = _near(prec).div(mpz(q.numerator), mpz(q.denominator))
    if mpq(m) == q:
        return m, _ZERO_RAD
    return m, _rnd(m, prec)


class Ball:
    """Real ball ``[mid - rad, mid + rad]`` at ``prec`` bits of working precision.

    Balls are immutable.  Construct from any exact number (``int``,
    ``Fraction``, decimal string, ``float``, MPFR); inexact conversions are
    widened by the rounding error.

    >>> (Ball(1) + Ball(2)).mid
    mpfr('3.0',256)
    """

    __slots__ = ("mid", "rad", "prec")

    def __init__(self, mid=0, rad=0, prec: int = DEFAULT_PREC):
        if prec < MIN_PREC:
            raise ValueError(f"precision must be at least {MIN_PREC} bits")
        if isinstance(mid, Ball):
            m, err = _from_exact(mid.mid, prec)
            err = _UP.add(err, mid.rad)
        else:
            m, err = _from_exact(mid, prec)
        if isinstance(rad, Ball):
            r = rad.upper()
        elif isinstance(rad, mpfr):
            r = _UP.plus(rad)
        else:
            r = _up_from_exact(rad)
        if r < 0:
            raise ValueError("radius must be nonnegative")
        r = _UP.add(r, err)
        if not (gmpy2.is_finite(m) and gmpy2.is_finite(r)):
            raise PrecisionExhausted("non-finite ball")
        object.__setattr__(self, "mid", m)
        object.__setattr__(self, "rad", r)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("Ball is immutable")

    @classmethod
    def _raw(cls, m, r, prec: int) -> "Ball":
        if not (gmpy2.is_finite(m) and gmpy2.is_finite(r)):
            raise PrecisionExhausted("radius or midpoint overflowed")
        b = object.__new__(cls)
        object.__setattr__(b, "mid", m)
        object.__setattr__(b, "rad", r)
        object.__setattr__(b, "prec", prec)
        return b

    @classmethod
    def coerce(cls, x, prec: int = DEFAULT_PREC) -> "Ball":
        if isinstance(x, Ball):
            return x
        return cls(x, 0, prec)

    @classmethod
    def from_bounds(cls, lo, hi, prec: int = DEFAULT_PREC) -> "Ball":
        """Smallest representable ball containing the exact interval [lo, hi]."""
        lo, hi = as_fraction(lo), as_fraction(hi)
        if lo > hi:
            raise ValueError("empty interval")
        return cls((lo + hi) / 2, (hi - lo) / 2, prec)

    @classmethod
    def pi(cls, prec: int = DEFAULT_PREC) -> "Ball":
        m = _near(prec).const_pi()
        return cls._raw(m, _rnd(m, prec), prec)

    @classmethod
    def log2(cls, prec: int = DEFAULT_PREC) -> "Ball":
        m = _near(prec).const_log2()
        return cls._raw(m, _rnd(m, prec), prec)

    # -- queries ---------------------------------------------------------

    def lower(self):
        return _down_ctx(self.prec + RAD_PREC).sub(self.mid, self.rad)

    def upper(self):
        return _up_ctx(self.prec + RAD_PREC).add(self.mid, self.rad)

    def mag(self):
        """Upper bound on ``|x|`` over the ball."""
        return _UP.add(mabs(self.mid), self.rad)

    def mig(self):
        """Lower bound on ``|x|`` over the ball (0 if it straddles zero)."""
        v = _DOWN.sub(mabs(self.mid), self.rad)
        return v if v > 0 else _ZERO_RAD

    def is_exact(self) -> bool:
        return self.rad == 0

    def is_zero(self) -> bool:
        return self.rad == 0 and self.mid == 0

    def contains(self, x) -> bool:
        """Exact membership test for a real number (or whole ball)."""
        if isinstance(x, Ball):
            return abs(mpq(x.mid) - mpq(self.mid)) + mpq(x.rad) <= mpq(self.rad)
        return abs(_to_mpq(as_fraction(x)) - mpq(self.mid)) <= mpq(self.rad)

    def contains_zero(self) -> bool:
        return mabs(self.mid) <= self.rad

    def overlaps(self, other: "Ball") -> bool:
        other = Ball.coerce(other, self.prec)
        return abs(mpq(self.mid) - mpq(other.mid)) <= mpq(self.rad) + mpq(other.rad)

    def intersect(self, other: "Ball") -> "Ball":
        """Tightest ball around the intersection; DomainError when disjoint."""
        lo1, hi1 = self.bounds()
        lo2, hi2 = other.bounds()
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo > hi:
            raise DomainError("balls are disjoint")
        return Ball.from_bounds(lo, hi, max(self.prec, other.prec))

    def union(self, other: "Ball") -> "Ball":
        lo1, hi1 = self.bounds()
        lo2, hi2 = other.bounds()
        return Ball.from_bounds(min(lo1, lo2), max(hi1, hi2), max(self.prec, other.prec))

    def bounds(self) -> tuple[Fraction, Fraction]:
        """Exact rational endpoints."""
        m, r = as_fraction(self.mid), as_fraction(self.rad)
        return m - r, m + r

    def sign(self) -> Sign:
        return ball_sign(self)

    def with_prec(self, prec: int) -> "Ball":
        return Ball(self, 0, prec)

    def widen(self, extra) -> "Ball":
        return Ball._raw(self.mid, _UP.add(self.rad, _up_from_exact(extra)), self.prec)

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        digits = max(6, min(40, int(self.prec * 0.30103)))
        if self.rad == 0:
            return f"Ball({gmpy2.mpfr(self.mid).__format__(f'.{digits}g')})"
        return f"Ball({self.mid.__format__(f'.{digits}g')} +/- {self.rad.__format__('.3g')})"

    # -- arithmetic ------------------------------------------------------

    def _other(self, other):
        if isinstance(other, Ball):
            return other
        if isinstance(other, CBall):
            return NotImplemented
        return Ball(other, 0, self.prec)

    def __neg__(self):
        return Ball._raw(mneg(self.mid), self.rad, self.prec)

    def __pos__(self):
        return self

    def __abs__(self):
        if mabs(self.mid) > self.rad:
            return Ball._raw(mabs(self.mid), self.rad, self.prec)
        half = _up_ctx(self.prec).plus(_UP.mul_2exp(_UP.add(mabs(self.mid), self.rad), -1))
        return Ball._raw(half, _UP.plus(half), self.prec)

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return _add(self, other, max(self.prec, other.prec))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return _add(self, -other, max(self.prec, other.prec))

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return _add(other, -self, max(self.prec, other.prec))

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return _mul(self, other, max(self.prec, other.prec))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return _div(self, other, max(self.prec, other.prec))

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return _div(other, self, max(self.prec, other.prec))

    def __pow__(self, n):
        if isinstance(n, int):
            return _ipow(self, n, self.prec)
        return _pow(self, Ball.coerce(n, self.prec), self.prec)

    def __rpow__(self, base):
        return _pow(Ball.coerce(base, self.prec), self, self.prec)

    def mul_2exp(self, e: int) -> "Ball":
        """Exact scaling by ``2**e``."""
        return Ball._raw(_near(self.prec).mul_2exp(self.mid, e), _UP.mul_2exp(self.rad, e), self.prec)

    def sqr(self) -> "Ball":
        return _sqr(self, self.prec)

    def sqrt(self) -> "Ball":
        return _sqrt(self, self.prec)

    def exp(self) -> "Ball":
        return _exp(self, self.prec)

    def log(self) -> "Ball":
        return _log(self, self.prec)

    def cos(self) -> "Ball":
        return _lipschitz1("cos", self, self.prec)

    def sin(self) -> "Ball":
        return _lipschitz1("sin", self, self.prec)

    def atan(self) -> "Ball":
        return _lipschitz1("atan", self, self.prec)

    def cosh(self) -> "Ball":
        e = self.exp()
        return (e + 1 / e).mul_2exp(-1)

    def sinh(self) -> "Ball":
        e = self.exp()
        return (e - 1 / e).mul_2exp(-1)


def _up_from_exact(x):
    if isinstance(x, mpfr):
        return _UP.plus(x)
    return q_up(x)


def q_up(x, prec: int = RAD_PREC):
    """Exact rational (or int) rounded up to an MPFR value."""
    q = _to_mpq(as_fraction(x))
    return _up_ctx(prec).div(mpz(q.numerator), mpz(q.denominator))


def q_down(x, prec: int = RAD_PREC):
    """Exact rational (or int) rounded down to an MPFR value."""
    q = _to_mpq(as_fraction(x))
    return _down_ctx(prec).div(mpz(q.numerator), mpz(q.denominator))


def _add(a: Ball, b: Ball, p: int) -> Ball:
    m, e = _op("add", p, a.mid, b.mid)
    r = _UP.add(_UP.add(a.rad, b.rad), e)
    return Ball._raw(m, r, p)


def _mul(a: Ball, b: Ball, p: int) -> Ball:
    m, r = _op("mul", p, a.mid, b.mid)
    if b.rad:
        r = _UP.add(r, _UP.mul(mabs(a.mid), b.rad))
    if a.rad:
        r = _UP.add(r, _UP.mul(mabs(b.mid), a.rad))
        if b.rad:
            r = _UP.add(r, _UP.mul(a.rad, b.rad))
    return Ball._raw(m, r, p)


def _sqr(a: Ball, p: int) -> Ball:
    m, r = _op("mul", p, a.mid, a.mid)
    if a.rad:
        r = _UP.add(r, _UP.mul(_UP.add(_UP.mul_2exp(mabs(a.mid), 1), a.rad), a.rad))
    return Ball._raw(m, r, p)


def _div(a: Ball, b: Ball, p: int) -> Ball:
    bm = mabs(b.mid)
    if bm <= b.rad:
        raise DomainError("division by a ball containing zero")
    m, r = _op("div", p, a.mid, b.mid)
    if a.rad or b.rad:
        num = _UP.add(_UP.mul(mabs(a.mid), b.rad), _UP.mul(bm, a.rad))
        den = _DOWN.mul(_DOWN.sub(bm, b.rad), bm)
        if den <= 0:
            raise DomainError("division by a ball too close to zero")
        r = _UP.add(r, _UP.div(num, den))
    return Ball._raw(m, r, p)


def _ipow(a: Ball, n: int, p: int) -> Ball:
    if n < 0:
        return _div(Ball(1, 0, p), _ipow(a, -n, p), p)
    result = Ball(1, 0, p)
    base = a
    while n:
        if n & 1:
            result = _mul(result, base, p)
        n >>= 1
        if n:
            base = _sqr(base, p)
    return result


def _sqrt(a: Ball, p: int) -> Ball:
    if a.is_zero():
        return a
    if a.mid <= a.rad:
        raise DomainError("sqrt of a ball that is not strictly positive")
    m, r = _op("sqrt", p, a.mid)
    if a.rad:
        r = _UP.add(r, _UP.div(a.rad, _DOWN.sqrt(_DOWN.sub(a.mid, a.rad))))
    return Ball._raw(m, r, p)


def _sqrt_nonneg(a: Ball, p: int) -> Ball:
    """sqrt of a quantity known to be nonnegative whose ball may touch zero."""
    if a.mid > a.rad:
        return _sqrt(a, p)
    half = _up_ctx(p).plus(_UP.mul_2exp(_UP.sqrt(_UP.add(mabs(a.mid), a.rad)), -1))
    return Ball._raw(half, _UP.plus(half), p)


def _exp(a: Ball, p: int) -> Ball:
    m, r = _op("exp", p, a.mid)
    if a.rad:
        r = _UP.add(r, _UP.mul(_UP.exp(_UP.add(a.mid, a.rad)), a.rad))
    return Ball._raw(m, r, p)


def _log(a: Ball, p: int) -> Ball:
    if a.mid <= a.rad:
        raise DomainError("log of a ball that is not strictly positive")
    m, r = _op("log", p, a.mid)
    if a.rad:
        r = _UP.add(r, _UP.div(a.rad, _DOWN.sub(a.mid, a.rad)))
    return Ball._raw(m, r, p)


def _lipschitz1(name: str, a: Ball, p: int) -> Ball:
    m = getattr(_near(p), name)(a.mid)
    r = _UP.add(_rnd(m, p), a.rad)
    return Ball._raw(m, r, p)


def _pow(a: Ball, b: Ball, p: int) -> Ball:
    if b.is_exact():
        q = mpq(b.mid)
        if q.denominator == 1:
            return _ipow(a, int(q.numerator), p)
    return _exp(_mul(b, _log(a, p), p), p)


def ball_sign(a: Ball) -> Sign:
    """POSITIVE iff mid - rad > 0, NEGATIVE iff mid + rad < 0, else STRADDLES."""
    if a.mid > a.rad:
        return Sign.POSITIVE
    if mneg(a.mid) > a.rad:
        return Sign.NEGATIVE
    return Sign.STRADDLES


_OPS = {
    "add": lambda a, b, p: _add(a, b, p),
    "sub": lambda a, b, p: _add(a, -b, p),
    "mul": lambda a, b, p: _mul(a, b, p),
    "div": lambda a, b, p: _div(a, b, p),
    "pow": lambda a, b, p: _pow(a, b, p),
    "sqrt": lambda a, b, p: _sqrt(a, p),
    "exp": lambda a, b, p: _exp(a, p),
    "log": lambda a, b, p: _log(a, p),
    "cos": lambda a, b, p: _lipschitz1("cos", a, p),
    "sin": lambda a, b, p: _lipschitz1("sin", a, p),
}


def ball_arith(op: str, a, b=None, prec: int | None = None) -> Ball:
    """Apply ``op`` to balls (or exact numbers) at an optional precision override."""
    if op not in _OPS:
        raise ValueError(f"unknown op {op!r}")
    if prec is None:
        prec = max(x.prec for x in (a, b) if isinstance(x, Ball)) if any(
            isinstance(x, Ball) for x in (a, b)) else DEFAULT_PREC
    a = Ball.coerce(a, prec)
    if b is not None:
        b = Ball.coerce(b, prec)
    elif op in ("add", "sub", "mul", "div", "pow"):
        raise ValueError(f"{op} needs two operands")
    return _OPS[op](a, b, prec)


Number = Union[int, Fraction, Ball]


class CBall:
    """Complex rectangle ``re + i*im`` with Ball components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0, prec: int = DEFAULT_PREC):
        object.__setattr__(self, "re", Ball.coerce(re, prec))
        object.__setattr__(self, "im", Ball.coerce(im, prec))

    def __setattr__(self, name, value):
        raise AttributeError("CBall is immutable")

    @classmethod
    def coerce(cls, z, prec: int = DEFAULT_PREC) -> "CBall":
        if isinstance(z, CBall):
            return z
        if isinstance(z, complex):
            return cls(Fraction(z.real), Fraction(z.imag), prec)
        if isinstance(z, gmpy2.mpc):
            return cls(z.real, z.imag, prec)
        return cls(z, 0, prec)

    @property
    def prec(self) -> int:
        return max(self.re.prec, self.im.prec)

    def __repr__(self) -> str:
        return f"CBall({self.re!r}, {self.im!r})"

    def __complex__(self) -> complex:
        return complex(float(self.re.mid), float(self.im.mid))

    def is_real(self) -> bool:
        return self.im.is_zero()

    def contains(self, z) -> bool:
        z = complex(z) if not isinstance(z, (CBall, tuple)) else z
        if isinstance(z, CBall):
            return self.re.contains(z.re) and self.im.contains(z.im)
        return self.re.contains(Fraction(z.real)) and self.im.contains(Fraction(z.imag))

    def overlaps(self, other: "CBall") -> bool:
        other = CBall.coerce(other, self.prec)
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    def conj(self) -> "CBall":
        return CBall(self.re, -self.im)

    def __neg__(self):
        return CBall(-self.re, -self.im)

    def _other(self, other):
        if isinstance(other, CBall):
            return other
        return CBall.coerce(other, self.prec)

    def __add__(self, other):
        other = self._other(other)
        return CBall(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        return CBall(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if isinstance(other, (Ball, int, Fraction)):
            return CBall(self.re * other, self.im * other)
        other = self._other(other)
        if other.im.is_zero():
            return CBall(self.re * other.re, self.im * other.re)
        if self.im.is_zero():
            return CBall(other.re * self.re, other.im * self.re)
        return CBall(self.re * other.re - self.im * other.im,
                     self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (Ball, int, Fraction)):
            return CBall(self.re / other, self.im / other)
        other = self._other(other)
        if other.im.is_zero():
            return CBall(self.re / other.re, self.im / other.re)
        den = other.re.sqr() + other.im.sqr()
        return CBall((self.re * other.re + self.im * other.im) / den,
                     (self.im * other.re - self.re * other.im) / den)

    def __rtruediv__(self, other):
        return self._other(other) / self

    def __pow__(self, n):
        if isinstance(n, int):
            if n < 0:
                return CBall(1, 0, self.prec) / (self ** (-n))
            result = CBall(1, 0, self.prec)
            base = self
            while n:
                if n & 1:
                    result = result * base
                n >>= 1
                if n:
                    base = base.sqr()
            return result
        return (CBall.coerce(n, self.prec) * self.log()).exp()

    def mul_2exp(self, e: int) -> "CBall":
        return CBall(self.re.mul_2exp(e), self.im.mul_2exp(e))

    def sqr(self) -> "CBall":
        if self.im.is_zero():
            return CBall(self.re.sqr(), self.im)
        return CBall(self.re.sqr() - self.im.sqr(), (self.re * self.im).mul_2exp(1))

    def abs2(self) -> Ball:
        return self.re.sqr() + self.im.sqr()

    def __abs__(self) -> Ball:
        if self.im.is_zero():
            return abs(self.re)
        if self.re.is_zero():
            return abs(self.im)
        return _sqrt_nonneg(self.abs2(), self.prec)

    def arg(self) -> Ball:
        """Principal argument; needs the rectangle to avoid the branch cut."""
        p = self.prec
        if self.re.mid > self.re.rad:
            if self.im.is_zero():
                return Ball(0, 0, p)
            return (self.im / self.re).atan()
        half_pi = Ball.pi(p).mul_2exp(-1)
        if self.im.mid > self.im.rad:
            return half_pi - (self.re / self.im).atan()
        if -self.im.mid > self.im.rad:
            return -half_pi - (self.re / self.im).atan()
        raise DomainError("argument undefined: rectangle meets the branch cut")

    def exp(self) -> "CBall":
        e = self.re.exp()
        if self.im.is_zero():
            return CBall(e, self.im)
        return CBall(e * self.im.cos(), e * self.im.sin())

    def log(self) -> "CBall":
        if self.im.is_zero() and self.re.mid > self.re.rad:
            return CBall(self.re.log(), self.im)
        half_log = self.abs2().log().mul_2exp(-1)
        return CBall(half_log, self.arg())

    def cos(self) -> "CBall":
        if self.im.is_zero():
            return CBall(self.re.cos(), self.im)
        return CBall(self.re.cos() * self.im.cosh(), -(self.re.sin() * self.im.sinh()))

    def sin(self) -> "CBall":
        if self.im.is_zero():
            return CBall(self.re.sin(), self.im)
        return CBall(self.re.sin() * self.im.cosh(), self.re.cos() * self.im.sinh())
