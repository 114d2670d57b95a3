"""Real polynomials over exact rationals or balls, and Taylor jets.

A :class:`RealPoly` stores ascending coefficients that are either all
``Fraction`` (exact mode) or all :class:`~jensenlab.numeric.Ball` (ball
mode).  A :class:`TaylorJet` stores the derivatives ``f^(k)(0)`` of an entire
function and stands in for the function itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Optional, Sequence

from .numeric import DEFAULT_PREC, Ball, CBall, Sign, ball_sign

__all__ = [
    "AmbiguousDegree",
    "CoefficientEnvelope",
    "JetTooShort",
    "ParityError",
    "RealPoly",
    "TaylorJet",
    "compose_obreschkoff",
    "differentiate",
    "half_form",
    "jensen",
    "reverse",
    "truncate_taylor",
]


class JetTooShort(ValueError):
    """More derivatives were requested than the jet holds."""


class ParityError(ValueError):
    """A jet expected to be even is not."""


class AmbiguousDegree(ValueError):
    """The leading ball coefficient straddles zero."""


class DegreeError(ValueError):
    pass


def _is_exact_zero(c) -> bool:
    if isinstance(c, Ball):
        return c.is_zero()
    return c == 0


def _coerce_coeff(c):
    if isinstance(c, Ball):
        return c
    if isinstance(c, CBall):
        raise TypeError("RealPoly coefficients must be real")
    return Fraction(c)


@dataclass(frozen=True)
class RealPoly:
    """Polynomial ``sum(coeffs[k] * z**k)`` with real coefficients.

    Exactly-zero trailing coefficients are stripped; the zero polynomial is
    ``RealPoly((0,))``.  Mixing ``Fraction`` and ``Ball`` promotes the whole
    polynomial to ball mode.
    """

    coeffs: tuple

    def __post_init__(self):
        cs = [_coerce_coeff(c) for c in self.coeffs]
        if any(isinstance(c, Ball) for c in cs):
            prec = max(c.prec for c in cs if isinstance(c, Ball))
            cs = [c if isinstance(c, Ball) else Ball(c, 0, prec) for c in cs]
        while len(cs) > 1 and _is_exact_zero(cs[-1]):
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "RealPoly":
        """Product ``lead * prod(z - r)`` over real roots."""
        p = cls((lead,))
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    @classmethod
    def monomial(cls, d: int, c=1) -> "RealPoly":
        return cls((0,) * d + (c,))

    @property
    def is_exact(self) -> bool:
        return not isinstance(self.coeffs[0], Ball)

    @property
    def prec(self) -> Optional[int]:
        return None if self.is_exact else max(c.prec for c in self.coeffs)

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and _is_exact_zero(self.coeffs[0])

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient (-1 for the zero polynomial)."""
        if self.is_zero():
            return -1
        lead = self.coeffs[-1]
        if isinstance(lead, Ball) and ball_sign(lead) is Sign.STRADDLES:
            raise AmbiguousDegree(f"leading coefficient {lead!r} straddles zero")
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0) if self.is_exact else Ball(0, 0, self.prec)

    def __repr__(self) -> str:
        if self.is_exact:
            return f"RealPoly({[str(c) for c in self.coeffs]})"
        return f"RealPoly({list(self.coeffs)!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, RealPoly):
            return NotImplemented
        if not (self.is_exact and other.is_exact):
            return self is other
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs) if self.is_exact else id(self)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self), len(other))
        return RealPoly(tuple(self[k] + other[k] for k in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return RealPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if not isinstance(other, RealPoly):
            return RealPoly(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        out = [None] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if _is_exact_zero(x):
                continue
            for j, y in enumerate(b):
                t = x * y
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        zero = Fraction(0) if (self.is_exact and other.is_exact) else Ball(0, 0, self.prec or other.prec)
        return RealPoly(tuple(zero if c is None else c for c in out))

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int) -> "RealPoly":
        result = RealPoly((1,))
        for _ in range(n):
            result = result * self
        return result

    def scale_arg(self, s) -> "RealPoly":
        """``P(s*z)``."""
        out, f = [], Fraction(1)
        for c in self.coeffs:
            out.append(c * f)
            f = f * s
        return RealPoly(tuple(out))

    def compose_square(self) -> "RealPoly":
        """``P(z**2)``."""
        out = []
        for c in self.coeffs:
            out.extend((c, 0 if self.is_exact else Ball(0, 0, self.prec)))
        return RealPoly(tuple(out[:-1]))

    def divmod(self, other: "RealPoly") -> tuple["RealPoly", "RealPoly"]:
        """Exact Euclidean division (exact mode only)."""
        if not (self.is_exact and other.is_exact):
            raise TypeError("divmod needs exact coefficients")
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db, lead = other.degree, other.coeffs[-1]
        if len(r) - 1 < db:
            return RealPoly((0,)), self
        q = [Fraction(0)] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] / lead
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[k + j] -= c * b
        return RealPoly(tuple(q)), RealPoly(tuple(r[:db]) or (0,))

    def monic(self) -> "RealPoly":
        return RealPoly(tuple(c / self.coeffs[-1] for c in self.coeffs))

    def __call__(self, z):
        return evaluate(self, z)

    def to_balls(self, prec: int = DEFAULT_PREC) -> "RealPoly":
        return RealPoly(tuple(Ball.coerce(c, prec) for c in self.coeffs))


def _as_poly(x) -> RealPoly:
    return x if isinstance(x, RealPoly) else RealPoly((x,))


def differentiate(P: RealPoly, n: int = 1) -> RealPoly:
    """n-th derivative of ``P``."""
    if n < 0:
        raise ValueError("derivative order must be nonnegative")
    if n == 0:
        return P
    cs = P.coeffs
    if len(cs) <= n:
        return RealPoly((0,))
    return RealPoly(tuple(cs[k] * (factorial(k) // factorial(k - n)) for k in range(n, len(cs))))


def evaluate(P: RealPoly, z):
    """Horner evaluation.  Exact for rational ``z`` and exact ``P``."""
    if isinstance(z, (CBall, complex)):
        z = CBall.coerce(z, P.prec or DEFAULT_PREC)
        acc = CBall(P.coeffs[-1], 0)
        for c in reversed(P.coeffs[:-1]):
            acc = acc * z + CBall(c, 0)
        return acc
    if isinstance(z, Ball) or not P.is_exact:
        prec = max(P.prec or DEFAULT_PREC, z.prec if isinstance(z, Ball) else 0)
        z = Ball.coerce(z, prec)
        acc = Ball.coerce(P.coeffs[-1], prec)
        for c in reversed(P.coeffs[:-1]):
            acc = acc * z + c
        return acc
    z = Fraction(z)
    acc = P.coeffs[-1]
    for c in reversed(P.coeffs[:-1]):
        acc = acc * z + c
    return acc


@dataclass(frozen=True)
class CoefficientEnvelope:
    """Bound ``|f^(k)(0)| <= C * (k + 1)**p * A**k`` valid for every k."""

    C: Fraction
    p: int
    A: Fraction

    def __call__(self, k: int) -> Fraction:
        return Fraction(self.C) * (k + 1) ** self.p * Fraction(self.A) ** k


@dataclass(frozen=True)
class TaylorJet:
    """Derivatives ``values[k] = f^(k)(0)`` for ``k = 0..M``.

    ``parity`` is ``"even"`` or ``"none"``; ``order_hint`` records the growth
    order of ``f`` (metadata only); ``decay`` optionally bounds every
    derivative beyond the stored ones, which truncation-tail estimates need.
    """

    values: tuple
    parity: str = "none"
    order_hint: Optional[float] = None
    label: str = ""
    decay: Optional[CoefficientEnvelope] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.values:
            raise ValueError("a jet needs at least one value")
        vals = tuple(v if isinstance(v, Ball) else Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if self.parity not in ("even", "none"):
            raise ValueError("parity must be 'even' or 'none'")
        if self.parity == "even":
            for k in range(1, len(vals), 2):
                v = vals[k]
                if (isinstance(v, Ball) and not v.contains_zero()) or (not isinstance(v, Ball) and v != 0):
                    raise ParityError(f"odd entry {k} of an even jet is nonzero: {v!r}")

    @property
    def M(self) -> int:
        return len(self.values) - 1

    @property
    def is_exact(self) -> bool:
        return not any(isinstance(v, Ball) for v in self.values)

    @classmethod
    def from_taylor(cls, coeffs: Sequence, **kw) -> "TaylorJet":
        """Jet from Taylor coefficients ``c_k`` (so ``f^(k)(0) = k! c_k``)."""
        return cls(tuple(c * factorial(k) for k, c in enumerate(coeffs)), **kw)

    @classmethod
    def from_poly(cls, P: RealPoly, M: Optional[int] = None, **kw) -> "TaylorJet":
        M = P.degree if M is None else M
        cs = [P[k] for k in range(M + 1)]
        return cls.from_taylor(cs, **kw)

    @classmethod
    def exp(cls, M: int) -> "TaylorJet":
        return cls((1,) * (M + 1), order_hint=1, label="exp(z)",
                   decay=CoefficientEnvelope(Fraction(1), 0, Fraction(1)))

    @classmethod
    def cos(cls, M: int) -> "TaylorJet":
        vals = [0 if k % 2 else (-1) ** (k // 2) for k in range(M + 1)]
        return cls(tuple(vals), parity="even", order_hint=1, label="cos(z)",
                   decay=CoefficientEnvelope(Fraction(1), 0, Fraction(1)))

    def shift(self, n: int) -> "TaylorJet":
        """Jet of ``f^(n)``."""
        if n > self.M:
            raise JetTooShort(f"cannot shift a jet of order {self.M} by {n}")
        parity = self.parity if n % 2 == 0 else "none"
        decay = None
        if self.decay is not None:
            d = self.decay
            decay = CoefficientEnvelope(Fraction(d.C) * Fraction(d.A) ** n, d.p, d.A)
            if d.p:
                # (k + n + 1)^p <= (n + 1)^p (k + 1)^p
                decay = CoefficientEnvelope(decay.C * (n + 1) ** d.p, d.p, d.A)
        return TaylorJet(self.values[n:], parity=parity, order_hint=self.order_hint,
                         label=f"{self.label}^({n})" if self.label else "", decay=decay)

    def scaled(self, s) -> "TaylorJet":
        """Jet of ``s * f`` for a positive constant ``s``."""
        return TaylorJet(tuple(v * s for v in self.values), parity=self.parity,
                         order_hint=self.order_hint, label=self.label)


def jensen(jet: TaylorJet, n: int, d: int) -> RealPoly:
    """Jensen polynomial ``J(f^(n); d)(z) = sum_k C(d, k) f^(n+k)(0) z^k``."""
    if d < 0 or n < 0:
        raise ValueError("n and d must be nonnegative")
    if n + d > jet.M:
        raise JetTooShort(f"J(f^({n});{d}) needs derivatives up to order {n + d}, jet has {jet.M}")
    return RealPoly(tuple(comb(d, k) * jet.values[n + k] for k in range(d + 1)))


def half_form(jet: TaylorJet) -> TaylorJet:
    """Jet of ``f0`` where ``f(z) = f0(z**2)``: ``f0^(k)(0) = k!/(2k)! f^(2k)(0)``."""
    if jet.parity != "even":
        raise ParityError("half_form needs a jet flagged even")
    vals = []
    for k in range(jet.M // 2 + 1):
        # k!/(2k)! = 1/((k+1)(k+2)...(2k))
        vals.append(jet.values[2 * k] / (factorial(2 * k) // factorial(k)))
    hint = None if jet.order_hint is None else jet.order_hint / 2
    return TaylorJet(tuple(vals), parity="none", order_hint=hint,
                     label=f"({jet.label})_0" if jet.label else "")


def compose_obreschkoff(P: RealPoly, Q: RealPoly) -> RealPoly:
    """``P(D)Q = sum_k P^(k)(0)/k! * Q^(k)``."""
    if P.is_zero() or Q.is_zero():
        raise ValueError("compose_obreschkoff needs nonzero polynomials")
    out = RealPoly((0,))
    dQ = Q
    for c in P.coeffs:
        if dQ.is_zero():
            break
        if not _is_exact_zero(c):
            out = out + dQ * c
        dQ = differentiate(dQ)
    return out


def reverse(P: RealPoly, d: int) -> RealPoly:
    """``z**d * P(1/z)``: coefficient k moves to position d - k."""
    if d < 0:
        raise DegreeError("reversal degree must be nonnegative")
    if len(P.coeffs) - 1 > d:
        raise DegreeError(f"cannot reverse a degree-{len(P.coeffs) - 1} polynomial at degree {d}")
    zero = Fraction(0) if P.is_exact else Ball(0, 0, P.prec)
    padded = list(P.coeffs) + [zero] * (d + 1 - len(P.coeffs))
    return RealPoly(tuple(reversed(padded)))


def truncate_taylor(jet: TaylorJet, M: int) -> RealPoly:
    """Taylor section ``sum_{k<=M} f^(k)(0)/k! z^k``."""
    if M > jet.M:
        raise JetTooShort(f"truncation order {M} exceeds jet order {jet.M}")
    return RealPoly(tuple(jet.values[k] / factorial(k) for k in range(M + 1)))


def poly_jet(P: RealPoly, M: Optional[int] = None) -> TaylorJet:
    """Jet of a polynomial, zero-padded to order ``M``."""
    return TaylorJet.from_poly(P, M)
