"""Certified root counting, root enclosure and zero-location regions.

Exact polynomials are decided with Sturm chains.  Complex roots are located
with the Ehrlich-Aberth iteration and then enclosed with the Weierstrass
inclusion theorem: for approximations ``z_i`` of the roots of a degree-n
polynomial, every zero lies in the union of the disks ``D(z_i, n |W_i|)``
with ``W_i = p(z_i) / (a_n prod_{j != i}(z_i - z_j))``, and a connected
component made of k disks holds exactly k zeros.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import gmpy2
from gmpy2 import mpc, mpfr

from .numeric import DEFAULT_PREC, Ball, CBall, DomainError, Sign, as_fraction, ball_sign, mabs, q_up
from .poly import RealPoly, differentiate

__all__ = [
    "GappedStrip",
    "GaussLucasReport",
    "HalfSector",
    "HyperbolicityVerdict",
    "Membership",
    "NonConvergence",
    "Parabolic",
    "RegionReport",
    "RootSet",
    "Sector",
    "SquareReport",
    "Status",
    "Strip",
    "all_roots",
    "convex_hull",
    "gauss_lucas_check",
    "half_sector_delta_sq",
    "hull_dist2",
    "is_hyperbolic",
    "point_in_region",
    "region_contains",
    "sector_square_member",
    "squarefree_factorization",
    "squarefree_part",
    "sturm_chain",
    "sturm_count",
]

MAX_SWEEPS = 200

_UP = gmpy2.context(precision=64, round=gmpy2.RoundUp)
_DOWN = gmpy2.context(precision=64, round=gmpy2.RoundDown)


class NonConvergence(ArithmeticError):
    """Root iteration did not settle; ``partial`` holds an uncertified RootSet."""

    def __init__(self, msg: str, partial: "RootSet | None" = None):
        super().__init__(msg)
        self.partial = partial


class Status(enum.Enum):
    HYPERBOLIC = "Hyperbolic"
    NOT_HYPERBOLIC = "NotHyperbolic"
    INDETERMINATE = "Indeterminate"


class Membership(enum.Enum):
    YES = "Yes"
    NO = "No"
    INDETERMINATE = "Indeterminate"


# ---------------------------------------------------------------------------
# exact machinery


def _gcd(a: RealPoly, b: RealPoly) -> RealPoly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
        if not b.is_zero():
            b = b.monic()
    return a.monic()


def squarefree_part(P: RealPoly) -> RealPoly:
    """``P / gcd(P, P')`` computed exactly."""
    if not P.is_exact:
        raise TypeError("squarefree_part needs exact coefficients")
    if P.is_zero():
        raise ValueError("the zero polynomial has no square-free part")
    if P.degree < 1:
        return P
    g = _gcd(P, differentiate(P))
    return P.divmod(g)[0]


def squarefree_factorization(P: RealPoly) -> list[tuple[RealPoly, int]]:
    """Yun's algorithm: ``P = c * prod(F_m ** m)`` with square-free, coprime ``F_m``."""
    if P.degree < 1:
        return []
    out = []
    dP = differentiate(P)
    a = _gcd(P, dP)
    b = P.divmod(a)[0]
    c = dP.divmod(a)[0]
    d = c - differentiate(b)
    m = 1
    while b.degree >= 1:
        a = _gcd(b, d)
        b = b.divmod(a)[0]
        c = d.divmod(a)[0]
        if a.degree >= 1:
            out.append((a, m))
        d = c - differentiate(b)
        m += 1
    return out


def sturm_chain(P: RealPoly) -> list[RealPoly]:
    chain = [P, differentiate(P)]
    while not chain[-1].is_zero():
        r = chain[-2].divmod(chain[-1])[1]
        if r.is_zero():
            break
        # positive rescaling keeps the sign pattern and the numbers small
        lead = abs(r.coeffs[-1])
        chain.append(-r * (1 / lead))
    return [p for p in chain if not p.is_zero()]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs) -> int:
    s = [v for v in signs if v != 0]
    return sum(1 for u, v in zip(s, s[1:]) if u != v)


def _signs_at(chain, x) -> list[int]:
    if x == math.inf:
        return [_sign(p.coeffs[-1]) for p in chain]
    if x == -math.inf:
        return [_sign(p.coeffs[-1]) * (-1) ** (len(p.coeffs) - 1) for p in chain]
    x = as_fraction(x)
    return [_sign(p(x)) for p in chain]


def sturm_count(P: RealPoly, a=-math.inf, b=math.inf, chain=None) -> int:
    """Number of distinct real roots of square-free ``P`` in ``(a, b]``."""
    if not P.is_exact:
        raise TypeError("sturm_count needs exact coefficients")
    if not a < b:
        raise ValueError("need a < b")
    if P.degree < 1:
        return 0
    chain = chain or sturm_chain(P)
    return _variations(_signs_at(chain, a)) - _variations(_signs_at(chain, b))


# ---------------------------------------------------------------------------
# root enclosure


@dataclass(frozen=True)
class RootSet:
    """Certified root disks.

    ``centers[i]`` and ``radii[i]`` describe a closed disk holding exactly
    ``multiplicities[i]`` zeros.  ``real[i]`` is True only when the zeros in
    the disk are certified real.  ``roots`` exposes the disks as CBall
    squares (which contain them).
    """

    centers: tuple
    radii: tuple
    multiplicities: tuple
    real: tuple
    residual: Ball
    certified: bool = True
    prec: int = DEFAULT_PREC

    @property
    def roots(self) -> tuple:
        return tuple(CBall(Ball(c.real, r, self.prec), Ball(c.imag, r, self.prec))
                     for c, r in zip(self.centers, self.radii))

    @property
    def degree(self) -> int:
        return sum(self.multiplicities)

    def __len__(self) -> int:
        return len(self.centers)

    def nonreal_indices(self) -> list[int]:
        """Disks that are not certified real."""
        return [i for i, r in enumerate(self.real) if not r]


def _mpc_coeffs(P: RealPoly, prec: int):
    with gmpy2.context(precision=prec):
        if P.is_exact:
            return [mpc(gmpy2.mpq(c.numerator, c.denominator)) for c in P.coeffs]
        return [mpc(c.mid) for c in P.coeffs]


def _initial_guesses(cs, prec: int):
    """Starts on circles whose radii come from the Newton polygon of ``cs``.

    The upper hull of ``(k, log|c_k|)`` splits the roots into groups of
    comparable modulus, which matters when root sizes span many orders.
    """
    n = len(cs) - 1
    with gmpy2.context(precision=64):
        logs = [gmpy2.log(abs(c)) if c != 0 else None for c in cs]
    pts = [(k, lg) for k, lg in enumerate(logs) if lg is not None]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (k1, l1), (k2, l2) = hull[-2], hull[-1]
            if (l2 - l1) * (pt[0] - k1) <= (pt[1] - l1) * (k2 - k1):
                hull.pop()
            else:
                break
        hull.append(pt)
    zs = []
    with gmpy2.context(precision=prec):
        tau = 2 * gmpy2.const_pi()
        if hull[0][0] > 0:
            # zero roots were split off by the caller; keep a tiny circle just in case
            zs.extend(mpfr(2) ** (-prec // 2) * mpc(gmpy2.cos(tau * j / hull[0][0] + mpfr("0.4")),
                                                   gmpy2.sin(tau * j / hull[0][0] + mpfr("0.4")))
                      for j in range(hull[0][0]))
        for (k1, l1), (k2, l2) in zip(hull, hull[1:]):
            m = k2 - k1
            r = gmpy2.exp(mpfr(l1 - l2) / m)
            for j in range(m):
                ang = tau * j / m + tau * k1 / n + mpfr("0.4")
                zs.append(r * mpc(gmpy2.cos(ang), gmpy2.sin(ang)))
    return zs


def _aberth(cs, zs, prec: int, sweeps: int = MAX_SWEEPS):
    """Gauss-Seidel Aberth sweeps.  Returns (zs, converged).

    A root is frozen once its Newton step is below ``2**(8-prec)`` relative
    to its size, or once ``|p(z)|`` is within a few ulps of the rounding error
    bound ``sum |c_k| |z|^k`` (further steps would only chase noise).
    """
    n = len(cs) - 1
    with gmpy2.context(precision=prec):
        dcs = [cs[k] * k for k in range(1, n + 1)]
        acs = [abs(c) for c in cs]
        tol = mpfr(2) ** (8 - prec)
        noise = tol * (2 * n + 2)
        zs = list(zs)
        done = [False] * n
        for _ in range(sweeps):
            for i in range(n):
                if done[i]:
                    continue
                z = zs[i]
                az = abs(z)
                p = cs[n]
                b = acs[n]
                for c, ac in zip(reversed(cs[:-1]), reversed(acs[:-1])):
                    p = p * z + c
                    b = b * az + ac
                if p == 0 or abs(p) <= noise * b:
                    done[i] = True
                    continue
                dp = dcs[-1]
                for c in reversed(dcs[:-1]):
                    dp = dp * z + c
                s = mpc(0)
                for j in range(n):
                    if j != i:
                        diff = z - zs[j]
                        if diff == 0:
                            diff = mpc(tol, tol)
                        s += 1 / diff
                if dp == 0:
                    delta = p / cs[n]
                else:
                    w = p / dp
                    den = 1 - w * s
                    delta = w / den if den != 0 else w
                zs[i] = z - delta
                if abs(delta) / (1 + abs(zs[i])) <= tol:
                    done[i] = True
            if all(done):
                return zs, True
        return zs, False


def _frac_pair(z) -> tuple[Fraction, Fraction]:
    return as_fraction(z.real), as_fraction(z.imag)


def _up(q: Fraction):
    return q_up(q)


def _abs_upper(c: CBall):
    return _UP.sqrt(_UP.add(_UP.square(c.re.mag()), _UP.square(c.im.mag())))


def _abs_lower(c: CBall):
    return _DOWN.sqrt(_DOWN.add(_DOWN.square(c.re.mig()), _DOWN.square(c.im.mig())))


def _inclusion_radii(P: RealPoly, zs, prec: int):
    """Radii ``n * |W_i|`` valid for every coefficient choice inside the balls."""
    n = len(zs)
    coeffs = P.coeffs if not P.is_exact else tuple(Ball(c, 0, prec) for c in P.coeffs)
    Pb = RealPoly(coeffs)
    lead_low = coeffs[-1].mig()
    if lead_low == 0:
        raise DomainError("leading coefficient straddles zero")
    pts = [CBall(Ball(z.real, 0, prec), Ball(z.imag, 0, prec)) for z in zs]
    radii, residual = [], mpfr(0)
    for i, zi in enumerate(pts):
        num = _abs_upper(Pb(zi))
        residual = max(residual, num)
        den = lead_low
        for j, zj in enumerate(pts):
            if j != i:
                den = _DOWN.mul(den, _abs_lower(zi - zj))
        if den == 0:
            radii.append(mpfr("inf"))
        else:
            radii.append(_UP.mul(n, _UP.div(num, den)))
    return radii, residual


def _dist2(a, b) -> Fraction:
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2


def _cluster(centers, radii):
    """Group disks; return list of (member indices, center pair, radius Fraction)."""
    pts = [_frac_pair(z) for z in centers]
    rs = [as_fraction(r) if gmpy2.is_finite(r) else None for r in radii]
    n = len(pts)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        parent[find(i)] = find(j)

    for i in range(n):
        for j in range(i + 1, n):
            if rs[i] is None or rs[j] is None:
                union(i, j)
                continue
            lim = 4 * (rs[i] + rs[j])
            if _dist2(pts[i], pts[j]) < lim * lim:
                union(i, j)
    while True:
        groups: dict[int, list[int]] = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(i)
        encl = []
        for members in groups.values():
            if any(rs[i] is None for i in members):
                encl.append((members, None, None))
                continue
            cx = sum(pts[i][0] for i in members) / len(members)
            cy = sum(pts[i][1] for i in members) / len(members)
            if len(members) == 1:
                R = rs[members[0]]
            else:
                R = max(as_fraction(_UP.sqrt(_up(_dist2((cx, cy), pts[i])))) + rs[i] for i in members)
            encl.append((members, (cx, cy), R))
        merged = False
        for a in range(len(encl)):
            for b in range(a + 1, len(encl)):
                ma, ca, Ra = encl[a]
                mb, cb, Rb = encl[b]
                if ca is None or cb is None or _dist2(ca, cb) <= (Ra + Rb) ** 2:
                    union(ma[0], mb[0])
                    merged = True
        if not merged:
            return encl


def _certify_real(encl, k: int) -> Optional[tuple]:
    """Conjugation-symmetric enlargement of a simple disk, if it stays isolated."""
    members, (cx, cy), R = encl[k]
    if len(members) != 1 or abs(cy) > R:
        return None
    R2 = R + abs(cy)
    for j, (_, c, Rj) in enumerate(encl):
        if j != k and _dist2((cx, Fraction(0)), c) <= (R2 + Rj) ** 2:
            return None
    return (cx, Fraction(0)), R2


def _rootset_from(P: RealPoly, zs, prec: int, mult_scale: int = 1):
    radii, residual = _inclusion_radii(P, zs, prec)
    encl = _cluster(zs, radii)
    centers, rads, mults, real = [], [], [], []
    for k, (members, c, R) in enumerate(encl):
        if c is None:
            raise NonConvergence("inclusion radius is unbounded")
        is_real = False
        cert = _certify_real(encl, k)
        if cert is not None:
            c, R = cert
            is_real = True
        with gmpy2.context(precision=prec):
            centers.append(mpc(gmpy2.mpq(c[0].numerator, c[0].denominator),
                               gmpy2.mpq(c[1].numerator, c[1].denominator)))
        # the rounded center moves by at most one ulp per component
        err = _UP.mul_2exp(_UP.add(mabs(centers[-1].real), mabs(centers[-1].imag)), 1 - prec)
        rads.append(_UP.add(_up(R), err))
        mults.append(len(members) * mult_scale)
        real.append(is_real)
    return centers, rads, mults, real, residual


def _nonconverged(centers, rads, mults, prec) -> bool:
    for c, r, m in zip(centers, rads, mults):
        scale = 1 + abs(c)
        if r > scale * mpfr(2) ** (-(prec // (2 * m)) + 4):
            return True
    return False


def _roots_one(P: RealPoly, prec: int, mult_scale: int = 1):
    """Aberth + enclosure for one polynomial; zero roots split off exactly."""
    cs = list(P.coeffs)
    nz = 0
    while len(cs) > 1 and (cs[0].is_zero() if isinstance(cs[0], Ball) else cs[0] == 0):
        cs.pop(0)
        nz += 1
    Q = RealPoly(tuple(cs))
    centers, rads, mults, real = [], [], [], []
    residual = mpfr(0)
    converged = True
    if nz:
        with gmpy2.context(precision=prec):
            centers.append(mpc(0))
        rads.append(mpfr(0))
        mults.append(nz * mult_scale)
        real.append(True)
    if len(cs) > 1:
        p = prec
        cm = _mpc_coeffs(Q, p)
        zs, ok = _aberth(cm, _initial_guesses(cm, p), p)
        if not ok:
            p = 2 * prec
            cm = _mpc_coeffs(Q, p)
            zs, ok = _aberth(cm, [mpc(z, precision=p) for z in zs], p)
        c2, r2, m2, re2, residual = _rootset_from(Q, zs, p, mult_scale)
        converged = ok or not _nonconverged(c2, r2, [m // mult_scale for m in m2], p)
        centers += c2
        rads += r2
        mults += m2
        real += re2
        if nz and any(_dist2(_frac_pair(c), (0, 0)) <= as_fraction(r) ** 2 for c, r in zip(c2, r2)):
            raise NonConvergence("a nonzero root disk touches the exact zero root")
    return centers, rads, mults, real, residual, converged


def all_roots(P: RealPoly, prec: int = DEFAULT_PREC) -> RootSet:
    """Certified enclosures of every complex root of ``P`` with multiplicities.

    Exact polynomials are split by square-free factorization first so that
    multiplicities are exact; ball polynomials are handled by clustering.
    Raises :class:`NonConvergence` (carrying the partial set) when the
    iteration does not settle after the sweep cap and one precision doubling.
    """
    if P.degree < 1:
        raise ValueError("all_roots needs degree >= 1")
    if P.is_exact:
        parts = squarefree_factorization(P) or [(P, 1)]
    else:
        parts = [(P, 1)]
    centers, rads, mults, real = [], [], [], []
    residual = mpfr(0)
    converged = True
    for F, m in parts:
        c, r, mu, re, res, ok = _roots_one(F, prec, m)
        centers += c
        rads += r
        mults += mu
        real += re
        residual = max(residual, res)
        converged = converged and ok
    if len(parts) > 1:
        pts = [_frac_pair(c) for c in centers]
        rr = [as_fraction(r) for r in rads]
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if _dist2(pts[i], pts[j]) <= (rr[i] + rr[j]) ** 2:
                    if prec < 8 * DEFAULT_PREC:
                        return all_roots(P, 2 * prec)
                    converged = False
    order = sorted(range(len(centers)), key=lambda i: (centers[i].real, centers[i].imag))
    centers, rads, mults, real = ([seq[i] for i in order] for seq in (centers, rads, mults, real))
    rs = RootSet(tuple(centers), tuple(rads), tuple(mults), tuple(real),
                 Ball(0, residual, prec), converged, prec)
    if not converged:
        raise NonConvergence("root iteration did not converge", rs)
    return rs


# ---------------------------------------------------------------------------
# hyperbolicity


@dataclass(frozen=True)
class HyperbolicityVerdict:
    status: Status
    witness: Optional[CBall] = None
    margin: Optional[Ball] = None
    method: str = ""

    @property
    def hyperbolic(self) -> bool:
        return self.status is Status.HYPERBOLIC

    def __str__(self) -> str:
        return self.status.value


def _nonreal_witness(P: RealPoly, prec: int) -> Optional[CBall]:
    for p in (prec, 2 * prec, 4 * prec):
        try:
            rs = all_roots(P, p)
        except NonConvergence as exc:
            rs = exc.partial
            if rs is None:
                continue
        for c, r in sorted(zip(rs.centers, rs.radii), key=lambda t: -t[0].imag):
            if mabs(c.imag) > r:
                return CBall(Ball(c.real, r, p), Ball(c.imag, r, p))
    return None


def _real_approximations(P: RealPoly, prec: int):
    cm = _mpc_coeffs(P, prec)
    zs, _ = _aberth(cm, _initial_guesses(cm, prec), prec)
    return zs


def _sign_alternation(P: RealPoly, zs, prec: int):
    """Certify d distinct real roots from sign changes at separators.

    Returns (certified, weakest evaluation ball).
    """
    d = len(P.coeffs) - 1
    xs = sorted(z.real for z in zs)
    lead = ball_sign(P.coeffs[-1]) if not P.is_exact else Sign.POSITIVE if P.coeffs[-1] > 0 else Sign.NEGATIVE
    s_lead = 1 if lead is Sign.POSITIVE else -1
    signs = [s_lead * (-1) ** d]
    weakest = None
    Pb = P if not P.is_exact else P.to_balls(prec)
    with gmpy2.context(precision=prec + 8):
        seps = [(xs[i] + xs[i + 1]) / 2 for i in range(d - 1)]
    for s in seps:
        if not xs[0] <= s <= xs[-1]:
            return False, None
        v = Pb(Ball(s, 0, prec + 8))
        sg = ball_sign(v)
        if weakest is None or _DOWN.sub(mabs(v.mid), v.rad) < _DOWN.sub(mabs(weakest.mid), weakest.rad):
            weakest = v
        if sg is Sign.STRADDLES:
            return False, v
        signs.append(1 if sg is Sign.POSITIVE else -1)
    signs.append(s_lead)
    ok = all(signs[i] != signs[i + 1] for i in range(len(signs) - 1))
    return ok, weakest


def is_hyperbolic(P: RealPoly, prec: int = DEFAULT_PREC) -> HyperbolicityVerdict:
    """Decide whether ``P`` has only real zeros.

    Exact polynomials get an exact Sturm verdict.  Ball polynomials are
    declared hyperbolic only when ``deg P`` sign changes are certified at
    separating points (so every polynomial inside the coefficient balls has
    that many distinct real zeros), and non-hyperbolic only when a certified
    root disk misses the real axis; otherwise the verdict is Indeterminate.
    """
    if P.is_zero():
        raise ValueError("the zero polynomial has no hyperbolicity verdict")
    d = P.degree
    if d <= 1:
        return HyperbolicityVerdict(Status.HYPERBOLIC, method="degree")
    if P.is_exact:
        sf = squarefree_part(P)
        if sturm_count(sf) == sf.degree:
            return HyperbolicityVerdict(Status.HYPERBOLIC, method="sturm")
        return HyperbolicityVerdict(Status.NOT_HYPERBOLIC, witness=_nonreal_witness(sf, prec), method="sturm")
    work = max(prec, P.prec)
    # separators only need to fall between roots, so try cheap approximations first
    ok, weakest = False, None
    for p in sorted({min(work, 128), work}):
        zs = _real_approximations(P, p)
        ok, weakest = _sign_alternation(P, zs, work)
        if ok:
            break
    if ok:
        return HyperbolicityVerdict(Status.HYPERBOLIC, margin=weakest, method="sign-alternation")
    try:
        rs = all_roots(P, work)
    except (NonConvergence, DomainError) as exc:
        rs = getattr(exc, "partial", None)
    if rs is not None:
        for c, r in sorted(zip(rs.centers, rs.radii), key=lambda t: -t[0].imag):
            if mabs(c.imag) > r:
                return HyperbolicityVerdict(Status.NOT_HYPERBOLIC,
                                            witness=CBall(Ball(c.real, r, work), Ball(c.imag, r, work)),
                                            method="root-disk")
    return HyperbolicityVerdict(Status.INDETERMINATE, margin=weakest, method="ball")


# ---------------------------------------------------------------------------
# regions

Param = Union[Fraction, Ball]


def _exact_or_ball(x) -> Param:
    if isinstance(x, Ball):
        return as_fraction(x.mid) if x.is_exact() else x
    return as_fraction(x)


def _ge(lhs: Fraction, rhs: Param) -> Membership:
    """Tri-state ``lhs >= rhs``."""
    if isinstance(rhs, Fraction):
        return Membership.YES if lhs >= rhs else Membership.NO
    lo, hi = rhs.bounds()
    if lhs >= hi:
        return Membership.YES
    if lhs < lo:
        return Membership.NO
    return Membership.INDETERMINATE


def _sector_inside(x, y, r, q) -> bool:
    """Disk D(x+iy, r) inside closed S(delta) with delta**2 = q (exact)."""
    if q >= 1:
        return True
    A, B = abs(x), abs(y)
    L = q * A * A - r * r - (1 - q) * B * B
    return L >= 0 and L * L >= 4 * r * r * B * B * (1 - q) and (q * A * A >= r * r)


def _sector_outside(x, y, r, q) -> bool:
    """Disk entirely in the open complement of S(delta)."""
    if q >= 1:
        return False
    A, B = abs(x), abs(y)
    L = (1 - q) * B * B - r * r - q * A * A
    return L > 0 and L * L > 4 * r * r * q * A * A


def _sector_point(x, y, q) -> bool:
    return y * y <= q * (x * x + y * y)


def _q_of(delta=None, delta_sq=None) -> Fraction:
    if delta_sq is not None:
        q = as_fraction(delta_sq)
    elif delta is not None:
        q = as_fraction(delta) ** 2
    else:
        raise ValueError("give delta or delta_sq")
    if q <= 0:
        raise DomainError("delta must be positive")
    return q


@dataclass(frozen=True)
class Strip:
    """Open strip ``|Im z| < h``."""

    h: Fraction = Fraction(1, 2)

    def __post_init__(self):
        object.__setattr__(self, "h", as_fraction(self.h))

    def point(self, x, y) -> Membership:
        return Membership.YES if abs(y) < self.h else Membership.NO

    def disk(self, x, y, r, real) -> Membership:
        if real or abs(y) + r < self.h:
            return Membership.YES
        if abs(y) - r >= self.h:
            return Membership.NO
        return Membership.INDETERMINATE


@dataclass(frozen=True)
class Sector:
    """Closed double sector ``|Im z| <= delta |z|``, stored as ``delta**2``."""

    delta_sq: Fraction

    def __post_init__(self):
        object.__setattr__(self, "delta_sq", _q_of(delta_sq=self.delta_sq))

    @classmethod
    def from_delta(cls, delta) -> "Sector":
        return cls(as_fraction(delta) ** 2)

    def point(self, x, y) -> Membership:
        return Membership.YES if _sector_point(x, y, self.delta_sq) else Membership.NO

    def disk(self, x, y, r, real) -> Membership:
        if real or _sector_inside(x, y, r, self.delta_sq):
            return Membership.YES
        if _sector_outside(x, y, r, self.delta_sq):
            return Membership.NO
        return Membership.INDETERMINATE


@dataclass(frozen=True)
class GappedStrip:
    """``{z : |Im z| < 1/2, |Re z| >= T} union R``."""

    T: Param

    def __post_init__(self):
        object.__setattr__(self, "T", _exact_or_ball(self.T))

    def point(self, x, y) -> Membership:
        if y == 0:
            return Membership.YES
        if abs(y) >= Fraction(1, 2):
            return Membership.NO
        return _ge(abs(x), self.T)

    def disk(self, x, y, r, real) -> Membership:
        if real:
            return Membership.YES
        if abs(y) + r < Fraction(1, 2):
            inner = _ge(max(abs(x) - r, Fraction(0)), self.T)
            if inner is Membership.YES:
                return Membership.YES
        if abs(y) > r:
            if abs(y) - r >= Fraction(1, 2):
                return Membership.NO
            if abs(x) + r >= 0 and _ge(abs(x) + r, self.T) is Membership.NO:
                return Membership.NO
        return Membership.INDETERMINATE


@dataclass(frozen=True)
class Parabolic:
    """Open region ``(Im z)**2 - 1/4 < Re z``, the image of the strip under squaring."""

    def point(self, x, y) -> Membership:
        return Membership.YES if y * y - Fraction(1, 4) < x else Membership.NO

    def disk(self, x, y, r, real) -> Membership:
        q = Fraction(1, 4)
        if real:
            if x - r > -q:
                return Membership.YES
            if x + r <= -q:
                return Membership.NO
            return Membership.INDETERMINATE
        if x - r - (abs(y) + r) ** 2 + q > 0:
            return Membership.YES
        if x + r - max(Fraction(0), abs(y) - r) ** 2 + q <= 0:
            return Membership.NO
        return Membership.INDETERMINATE


@dataclass(frozen=True)
class HalfSector:
    """``{z in S(delta) : Re z >= 0}``, stored as ``delta**2``."""

    delta_sq: Fraction

    def __post_init__(self):
        object.__setattr__(self, "delta_sq", _q_of(delta_sq=self.delta_sq))

    def point(self, x, y) -> Membership:
        return Membership.YES if x >= 0 and _sector_point(x, y, self.delta_sq) else Membership.NO

    def disk(self, x, y, r, real) -> Membership:
        if real:
            if x - r >= 0:
                return Membership.YES
            if x + r < 0:
                return Membership.NO
            return Membership.INDETERMINATE
        if x - r >= 0 and _sector_inside(x, y, r, self.delta_sq):
            return Membership.YES
        if x + r < 0 or _sector_outside(x, y, r, self.delta_sq):
            return Membership.NO
        return Membership.INDETERMINATE


RegionSpec = Union[Strip, Sector, GappedStrip, Parabolic, HalfSector]


@dataclass(frozen=True)
class RegionReport:
    status: Membership
    witness: Optional[CBall] = None
    per_root: tuple = field(default=(), repr=False)


def region_contains(rs: RootSet, region: RegionSpec) -> RegionReport:
    """Yes iff every root disk lies inside ``region``; No with a disk entirely outside."""
    statuses = []
    witness, undecided = None, False
    for c, r, real, ball in zip(rs.centers, rs.radii, rs.real, rs.roots):
        x, y = _frac_pair(c)
        m = region.disk(x, y, as_fraction(r), real)
        statuses.append(m)
        if m is Membership.NO and witness is None:
            witness = ball
        elif m is Membership.INDETERMINATE:
            undecided = True
    if witness is not None:
        return RegionReport(Membership.NO, witness, tuple(statuses))
    if undecided:
        return RegionReport(Membership.INDETERMINATE, None, tuple(statuses))
    return RegionReport(Membership.YES, None, tuple(statuses))


def point_in_region(z, region: RegionSpec) -> Membership:
    """Exact membership of a point with rational (or dyadic) coordinates."""
    if isinstance(z, CBall):
        if not (z.re.is_exact() and z.im.is_exact()):
            raise ValueError("point_in_region needs an exact point")
        x, y = as_fraction(z.re.mid), as_fraction(z.im.mid)
    elif isinstance(z, tuple):
        x, y = as_fraction(z[0]), as_fraction(z[1])
    else:
        z = complex(z)
        x, y = Fraction(z.real), Fraction(z.imag)
    return region.point(x, y)


def half_sector_delta_sq(delta_sq) -> Fraction:
    """``tilde-delta**2 = 4 delta**2 (1 - delta**2)``."""
    q = as_fraction(delta_sq)
    return 4 * q * (1 - q)


@dataclass(frozen=True)
class SquareReport:
    in_sector: Membership
    square_in_half_sector: Membership

    @property
    def agreement(self) -> str:
        a, b = self.in_sector, self.square_in_half_sector
        if Membership.INDETERMINATE in (a, b):
            return "indeterminate"
        return "agree" if a is b else "disagree"


def _tri(ok_yes: Sign) -> Membership:
    return {Sign.POSITIVE: Membership.NO, Sign.NEGATIVE: Membership.YES}.get(ok_yes, Membership.INDETERMINATE)


def sector_square_member(z, delta=None, *, delta_sq=None) -> SquareReport:
    """Evaluate ``z in S(delta)`` and ``z**2 in S~`` for ``0 < delta <= 2**-1/2``.

    ``S~ = {w in S(2 delta sqrt(1 - delta**2)) : Re w >= 0}``.  Exact points
    (rationals, or CBalls of radius zero) are decided exactly; general balls
    give a tri-state answer.
    """
    q = _q_of(delta, delta_sq)
    if q > Fraction(1, 2):
        raise DomainError("delta must lie in (0, 2**-1/2]")
    qt = half_sector_delta_sq(q)
    exact = not isinstance(z, CBall) or (z.re.is_exact() and z.im.is_exact())
    if exact:
        x, y = (as_fraction(z.re.mid), as_fraction(z.im.mid)) if isinstance(z, CBall) else \
            (as_fraction(z[0]), as_fraction(z[1])) if isinstance(z, tuple) else \
            (Fraction(complex(z).real), Fraction(complex(z).imag))
        a = Sector(q).point(x, y)
        wx, wy = x * x - y * y, 2 * x * y
        b = HalfSector(qt).point(wx, wy)
        return SquareReport(a, b)
    # ball inputs: the membership conditions as signs of polynomial expressions
    x, y = z.re, z.im
    a = _tri(ball_sign(y.sqr() * (1 - q) - x.sqr() * q))
    w = z.sqr()
    s_re = ball_sign(w.re)
    cond = ball_sign(w.im.sqr() * (1 - qt) - w.re.sqr() * qt)
    if s_re is Sign.NEGATIVE or cond is Sign.POSITIVE:
        b = Membership.NO
    elif s_re is Sign.POSITIVE and cond is Sign.NEGATIVE:
        b = Membership.YES
    elif w.re.is_zero() and w.im.is_zero():
        b = Membership.YES
    else:
        b = Membership.INDETERMINATE
    return SquareReport(a, b)


# ---------------------------------------------------------------------------
# Gauss-Lucas


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> list:
    """Andrew's monotone chain on exact points; counter-clockwise, no collinear vertices."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _seg_dist2(p, a, b) -> Fraction:
    dx, dy = b[0] - a[0], b[1] - a[1]
    L = dx * dx + dy * dy
    if L == 0:
        return _dist2(p, a)
    t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / L
    t = min(Fraction(1), max(Fraction(0), t))
    return _dist2(p, (a[0] + t * dx, a[1] + t * dy))


def hull_dist2(p, hull) -> Fraction:
    """Squared distance from ``p`` to the convex polygon ``hull`` (0 inside)."""
    if len(hull) == 1:
        return _dist2(p, hull[0])
    if len(hull) == 2:
        return _seg_dist2(p, hull[0], hull[1])
    if all(_cross(hull[i], hull[(i + 1) % len(hull)], p) >= 0 for i in range(len(hull))):
        return Fraction(0)
    return min(_seg_dist2(p, hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull)))


@dataclass(frozen=True)
class GaussLucasReport:
    status: Membership
    witness: Optional[CBall] = None
    slack: Optional[Fraction] = None

    @property
    def passed(self) -> bool:
        return self.status is Membership.YES


def gauss_lucas_check(P: RealPoly, prec: int = DEFAULT_PREC) -> GaussLucasReport:
    """Check that every critical point of ``P`` lies in the hull of its zeros.

    The hull of the zero-disk centers is inflated by the largest zero-disk
    radius plus the critical-point disk radius.  Pass (``Membership.YES``)
    when every critical disk center is within that distance; Fail (``NO``)
    with a witness when one is provably farther.
    """
    if P.degree < 2:
        raise ValueError("gauss_lucas_check needs degree >= 2")
    try:
        rz = all_roots(P, prec)
        rc = all_roots(differentiate(P), prec)
    except NonConvergence:
        return GaussLucasReport(Membership.INDETERMINATE)
    hull = convex_hull([_frac_pair(c) for c in rz.centers])
    R = max(as_fraction(r) for r in rz.radii)
    worst = None
    for c, r, ball in zip(rc.centers, rc.radii, rc.roots):
        tol = R + as_fraction(r)
        d2 = hull_dist2(_frac_pair(c), hull)
        slack = tol * tol - d2
        if worst is None or slack < worst:
            worst = slack
        if d2 > tol * tol:
            return GaussLucasReport(Membership.NO, ball, slack)
    return GaussLucasReport(Membership.YES, None, worst)
