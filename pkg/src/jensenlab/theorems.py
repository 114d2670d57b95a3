"""Randomized and constructive harnesses for the hyperbolicity results.

Every suite is deterministic: trial ``i`` draws from its own generator seeded
with ``(seed, i)``, so reports do not depend on execution order.  Exact mode
decides hyperbolicity with Sturm sequences over the rationals; ball mode
converts the polynomials to balls first and may answer Indeterminate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Optional, Sequence

import gmpy2
import numpy as np

from .numeric import Ball, as_fraction
from .poly import (
    AmbiguousDegree,
    CoefficientEnvelope,
    JetTooShort,
    RealPoly,
    TaylorJet,
    compose_obreschkoff,
    differentiate,
    half_form,
    jensen,
    poly_jet,
    reverse,
)
from .roots import (
    GappedStrip,
    HalfSector,
    HyperbolicityVerdict,
    Membership,
    NonConvergence,
    Sector,
    Status,
    all_roots,
    gauss_lucas_check,
    half_sector_delta_sq,
    is_hyperbolic,
    region_contains,
    sector_square_member,
)

__all__ = [
    "EMPIRICAL_CAVEAT",
    "Counterexample",
    "CorollaryReport",
    "HypothesisViolation",
    "Mode",
    "ScanResult",
    "SuiteReport",
    "TailBoundUnavailable",
    "Theorem2Report",
    "Theorem2Row",
    "Theorem4Constants",
    "TrialConfig",
    "bound_theorem1",
    "bound_theorem4",
    "cos_product_jet",
    "random_even_strip_poly",
    "random_sector_poly",
    "scan_jensen_grid",
    "scan_theorem2",
    "theorem4_constants",
    "verify_corollary",
    "verify_corollary_suite",
    "verify_gauss_lucas",
    "verify_sector_squaring",
    "verify_theorem3",
    "verify_theorem4",
    "xi0_jet",
]

EMPIRICAL_CAVEAT = "empirical within scanned range only"


class HypothesisViolation(ValueError):
    """The requested configuration lies outside the theorem's hypotheses."""


class TailBoundUnavailable(ValueError):
    """A truncation scan needs a coefficient decay bound the jet does not carry."""


class Mode(enum.Enum):
    EXACT = "exact"
    BALL = "ball"


def _rat(x) -> Fraction:
    """Rational value of a user parameter; floats are read through their repr."""
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, Ball):
        if not x.is_exact():
            raise ValueError(f"expected an exact value, got {x!r}")
        return as_fraction(x.mid)
    return Fraction(x)


def _sq_bounds(delta=None, delta_sq=None) -> tuple[Fraction, Fraction]:
    """Rational lower and upper bounds on ``delta**2``."""
    if delta_sq is not None:
        q = _rat(delta_sq)
        return q, q
    if delta is None:
        raise ValueError("give delta or delta_sq")
    if isinstance(delta, Ball) and not delta.is_exact():
        lo, hi = as_fraction(delta.lower()), as_fraction(delta.upper())
        if lo <= 0:
            raise ValueError("delta must be positive")
        return lo * lo, hi * hi
    d = _rat(delta)
    return d * d, d * d


@dataclass(frozen=True)
class TrialConfig:
    """Parameters shared by the randomized suites.

    ``deg_P`` and ``deg_Q`` are inclusive ranges.  The region parameter is
    either ``delta``/``delta_sq`` (sector suites) or ``T`` (strip suites).
    """

    seed: int = 0
    trials: int = 100
    deg_P: tuple = (0, 4)
    deg_Q: tuple = (1, 4)
    delta: Optional[Fraction] = None
    delta_sq: Optional[Fraction] = None
    T: Optional[Fraction] = None
    prec: int = 128
    mode: Mode = Mode.EXACT

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        for name in ("deg_P", "deg_Q"):
            lo, hi = getattr(self, name)
            if not 0 <= lo <= hi:
                raise ValueError(f"{name} must be a range 0 <= lo <= hi")
        if self.delta is not None or self.delta_sq is not None:
            lo, hi = _sq_bounds(self.delta, self.delta_sq)
            if not 0 < lo <= hi <= 1:
                raise ValueError("delta must lie in (0, 1]")
        if self.T is not None and _rat(self.T) < 0:
            raise ValueError("T must be nonnegative")
        if not isinstance(self.mode, Mode):
            object.__setattr__(self, "mode", Mode(self.mode))

    def rng(self, i: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, i])

    @property
    def q(self) -> tuple[Fraction, Fraction]:
        return _sq_bounds(self.delta, self.delta_sq)


@dataclass(frozen=True)
class Counterexample:
    trial: int
    reason: str
    data: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SuiteReport:
    """Outcome of a randomized suite.

    ``checks`` counts individual certified assertions (several per trial for
    the grid suites).  ``exit_code`` follows the command-line contract.
    """

    name: str
    trials: int
    checks: int
    counterexamples: tuple = ()
    indeterminate: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.counterexamples and not self.indeterminate

    @property
    def exit_code(self) -> int:
        if self.counterexamples:
            return 1
        return 2 if self.indeterminate else 0


def _verdict(P: RealPoly, mode: Mode, prec: int) -> HyperbolicityVerdict:
    if P.is_zero():
        # the zero polynomial counts as hyperbolic (the Polya-Schur convention)
        return HyperbolicityVerdict(Status.HYPERBOLIC, method="zero-polynomial")
    if mode is Mode.BALL and P.is_exact:
        P = P.to_balls(prec)
    try:
        return is_hyperbolic(P, prec)
    except AmbiguousDegree:
        return HyperbolicityVerdict(Status.INDETERMINATE, method="ambiguous-degree")


def _poly_str(P: RealPoly) -> str:
    return " ".join(str(c) for c in P.coeffs)


def _minimize(items: list, still_fails: Callable[[list], bool]) -> list:
    """Greedy one-at-a-time removal while the failure persists."""
    items = list(items)
    changed = True
    while changed and len(items) > 1:
        changed = False
        for i in range(len(items)):
            trial = items[:i] + items[i + 1:]
            if still_fails(trial):
                items = trial
                changed = True
                break
    return items


# ---------------------------------------------------------------------------
# random generators


def _rand_rat(rng, lo, hi, den: int = 16) -> Fraction:
    return Fraction(int(rng.integers(math.floor(lo * den), math.ceil(hi * den) + 1)), den)


def _nonzero_rat(rng, lo, hi, den: int = 16) -> Fraction:
    while True:
        x = _rand_rat(rng, lo, hi, den)
        if x:
            return x


def _slope_cap(c: Fraction) -> Optional[Fraction]:
    """Rational m with m**2 <= c/(1-c): slopes y/x allowed inside S(sqrt(c))."""
    if c >= 1:
        return None
    bound = c / (1 - c)
    m = Fraction(math.sqrt(float(bound))).limit_denominator(1000)
    while m * m > bound:
        m *= Fraction(999, 1000)
    return m


def _sector_factors(deg: int, q: Fraction, rng) -> list:
    """Real factors of a polynomial of degree ``deg`` with zeros strictly in S(sqrt(q))."""
    c = Fraction(361, 400) * q  # (0.95 delta)**2
    cap = _slope_cap(c)
    pairs = int(rng.integers(0, deg // 2 + 1))
    factors = []
    for _ in range(pairs):
        x = _nonzero_rat(rng, -10, 10)
        if cap is None:
            y = _nonzero_rat(rng, -10, 10)
        else:
            y = cap * Fraction(int(rng.integers(-1000, 1001)), 1000) * x
        factors.append(RealPoly((x * x + y * y, -2 * x, 1)))
    for _ in range(deg - 2 * pairs):
        factors.append(RealPoly((-_nonzero_rat(rng, -10, 10), 1)))
    return factors


def _product(factors, lead=Fraction(1)) -> RealPoly:
    P = RealPoly((lead,))
    for f in factors:
        P = P * f
    return P


def random_sector_poly(deg: int, delta=None, rng=None, *, delta_sq=None) -> RealPoly:
    """Random rational polynomial of degree ``deg`` with all zeros in ``S(delta)``.

    Nonreal zeros come in conjugate pairs ``a, conj(a)`` with
    ``|Im a| <= 0.95 delta |a|``; real zeros are nonzero.  ``rng`` is a numpy
    generator or an integer seed.

    Examples
    --------
    >>> P = random_sector_poly(3, Fraction(1, 2), 7)
    >>> P.degree
    3
    """
    q, _ = _sq_bounds(delta, delta_sq)
    if q <= 0:
        raise ValueError("delta must be positive")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    return _product(_sector_factors(deg, q, rng))


def _random_hyperbolic_roots(rng, deg: int) -> list:
    return [_rand_rat(rng, -10, 10, 8) for _ in range(deg)]


# ---------------------------------------------------------------------------
# Theorem 3 and the corollary


def verify_theorem3(cfg: TrialConfig) -> SuiteReport:
    """``P(D)Q`` is hyperbolic whenever zeros of P lie in S(delta), Q is
    hyperbolic and ``deg Q <= delta**-2``.

    Raises HypothesisViolation if the configured ``deg_Q`` range can exceed
    ``floor(delta**-2)``.
    """
    q_lo, q_hi = cfg.q
    cap = math.floor(1 / q_hi)
    if cfg.deg_Q[1] > cap:
        raise HypothesisViolation(f"deg Q up to {cfg.deg_Q[1]} exceeds floor(delta^-2) = {cap}")
    bad, undecided = [], 0
    for i in range(cfg.trials):
        rng = cfg.rng(i)
        factors = _sector_factors(int(rng.integers(cfg.deg_P[0], cfg.deg_P[1] + 1)), q_lo, rng)
        lead_p = _nonzero_rat(rng, -4, 4)
        qroots = _random_hyperbolic_roots(rng, int(rng.integers(cfg.deg_Q[0], cfg.deg_Q[1] + 1)))
        lead_q = _nonzero_rat(rng, -4, 4)

        def status(fs, rs):
            R = compose_obreschkoff(_product(fs, lead_p), RealPoly.from_roots(rs, lead_q))
            return _verdict(R, cfg.mode, cfg.prec).status

        st = status(factors, qroots)
        if st is Status.INDETERMINATE:
            undecided += 1
        elif st is Status.NOT_HYPERBOLIC:
            fs = _minimize(factors, lambda f: status(f, qroots) is Status.NOT_HYPERBOLIC)
            rs = _minimize(qroots, lambda r: status(fs, r) is Status.NOT_HYPERBOLIC)
            P = _product(fs, lead_p)
            bad.append(Counterexample(i, "P(D)Q not hyperbolic", {
                "P": _poly_str(P), "Q_roots": " ".join(map(str, rs)), "Q_lead": str(lead_q),
                "delta_sq": str(q_lo)}))
    return SuiteReport("theorem3", cfg.trials, cfg.trials, tuple(bad), undecided,
                       {"delta_sq": str(q_lo), "deg_Q_max": cfg.deg_Q[1]})


@dataclass(frozen=True)
class CorollaryReport:
    """Identity and hyperbolicity checks for ``J(P; d)``.

    ``hypotheses`` is Yes when the zeros of P are certified inside
    ``S(d**-1/2)``, the widest sector the corollary allows for this d.  The
    verdict is always computed; it only counts against the corollary when
    the hypotheses are certified.
    """

    d: int
    identity: bool
    hypotheses: Membership
    verdict: Status
    jensen_poly: RealPoly

    @property
    def violation(self) -> bool:
        return not self.identity or (self.hypotheses is Membership.YES and self.verdict is Status.NOT_HYPERBOLIC)


def verify_corollary(P: RealPoly, d: int, *, mode: Mode = Mode.EXACT, prec: int = 128) -> CorollaryReport:
    """Check ``J(P;d) = z^d (P(D) z^d)(1/z)`` exactly, and hyperbolicity when it is promised.

    The identity holds for every ``d >= 0``: terms of P beyond degree d are
    annihilated by ``D^k z^d``.

    Examples
    --------
    >>> r = verify_corollary(RealPoly((2, 2, 1)), 2)
    >>> r.identity, r.verdict
    (True, <Status.HYPERBOLIC: 'Hyperbolic'>)
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    M = max(d, len(P.coeffs) - 1)
    J = jensen(poly_jet(P, M), 0, d)
    other = reverse(compose_obreschkoff(P, RealPoly.monomial(d)), d)
    identity = J == other if P.is_exact else all(a.overlaps(b) for a, b in zip(J.coeffs, other.coeffs))
    if d == 0 or P.degree < 1:
        hyp = Membership.YES
    else:
        try:
            hyp = region_contains(all_roots(P, prec), Sector(Fraction(1, d))).status
        except NonConvergence:
            hyp = Membership.INDETERMINATE
    verdict = _verdict(J, mode, prec).status
    return CorollaryReport(d, identity, hyp, verdict, J)


def verify_corollary_suite(cfg: TrialConfig) -> SuiteReport:
    """Identity on random ``(P, d)`` pairs with ``d >= deg P``.

    Even trials draw P with zeros in ``S(d**-1/2)`` so hyperbolicity is also
    checked; odd trials draw unrestricted rational coefficients.
    """
    bad, undecided, checks = [], 0, 0
    for i in range(cfg.trials):
        rng = cfg.rng(i)
        d = int(rng.integers(max(cfg.deg_Q[0], 1), cfg.deg_Q[1] + 1))
        deg = int(rng.integers(cfg.deg_P[0], min(cfg.deg_P[1], d) + 1))
        if i % 2 == 0:
            P = _product(_sector_factors(deg, Fraction(1, d), rng), _nonzero_rat(rng, -4, 4))
        else:
            cs = [_rand_rat(rng, -10, 10) for _ in range(deg)] + [_nonzero_rat(rng, -10, 10)]
            P = RealPoly(tuple(cs))
        rep = verify_corollary(P, d, mode=cfg.mode, prec=cfg.prec)
        checks += 2
        if rep.violation:
            bad.append(Counterexample(i, "identity failed" if not rep.identity else "J(P;d) not hyperbolic",
                                      {"P": _poly_str(P), "d": d}))
        elif i % 2 == 0 and rep.hypotheses is Membership.YES and rep.verdict is not Status.HYPERBOLIC:
            undecided += 1
    return SuiteReport("corollary", cfg.trials, checks, tuple(bad), undecided)


# ---------------------------------------------------------------------------
# squaring the sector, Gauss-Lucas


def verify_sector_squaring(cfg: TrialConfig, deltas_sq: Sequence = (Fraction(1, 100), Fraction(1, 4),
                                                                   Fraction(1, 2))) -> SuiteReport:
    """``z in S(delta)`` iff ``z**2`` in the half sector, for random rational z.

    A third of the points are drawn close to the sector boundary and, when the
    boundary slope is rational, exactly on it.
    """
    bad, undecided = [], 0
    for i in range(cfg.trials):
        rng = cfg.rng(i)
        q = Fraction(deltas_sq[i % len(deltas_sq)])
        kind = i % 3
        x = _rand_rat(rng, -10, 10, 64)
        if kind == 0:
            y = _rand_rat(rng, -10, 10, 64)
        else:
            slope2 = q / (1 - q)
            m = Fraction(math.sqrt(float(slope2))).limit_denominator(10 ** 6)
            if kind == 2 and m * m == slope2:
                y = m * x
            else:
                y = (m + Fraction(int(rng.integers(-100, 101)), 10 ** 6)) * x
            if rng.integers(0, 2):
                y = -y
        rep = sector_square_member((x, y), delta_sq=q)
        a = rep.agreement
        if a == "disagree":
            bad.append(Counterexample(i, "membership disagreement",
                                      {"z": f"{x}+{y}i", "delta_sq": str(q),
                                       "in_sector": rep.in_sector.value,
                                       "square_in_half_sector": rep.square_in_half_sector.value}))
        elif a == "indeterminate":
            undecided += 1
    return SuiteReport("sector-squaring", cfg.trials, cfg.trials, tuple(bad), undecided)


def verify_gauss_lucas(cfg: TrialConfig) -> SuiteReport:
    """Critical points inside the hull of the zeros, for random rational polynomials."""
    bad, undecided = [], 0
    lo = max(cfg.deg_P[0], 2)
    for i in range(cfg.trials):
        rng = cfg.rng(i)
        deg = int(rng.integers(lo, max(lo, cfg.deg_P[1]) + 1))
        cs = [_rand_rat(rng, -10, 10) for _ in range(deg)] + [_nonzero_rat(rng, -10, 10)]
        P = RealPoly(tuple(cs))
        if P.degree < 2 or differentiate(P).is_zero():
            continue
        rep = gauss_lucas_check(P, cfg.prec)
        if rep.status is Membership.NO:
            bad.append(Counterexample(i, "critical point outside hull", {"P": _poly_str(P)}))
        elif rep.status is Membership.INDETERMINATE:
            undecided += 1
    return SuiteReport("gauss-lucas", cfg.trials, cfg.trials, tuple(bad), undecided)


# ---------------------------------------------------------------------------
# Theorem 4


def _exact_sqrt(q: Fraction) -> Optional[Fraction]:
    n, d = q.numerator, q.denominator
    rn, en = gmpy2.iroot(gmpy2.mpz(n), 2)
    rd, ed = gmpy2.iroot(gmpy2.mpz(d), 2)
    return Fraction(int(rn), int(rd)) if en and ed else None


@dataclass(frozen=True)
class Theorem4Constants:
    """``delta = (1 + 4T^2)^(-1/2)`` and ``tilde-delta = 2 delta sqrt(1 - delta^2)``.

    Squares are stored exactly; :meth:`delta` and :meth:`delta_tilde` return
    exact Fractions when the square root is rational and balls otherwise.
    """

    T: Fraction
    delta_sq: Fraction
    delta_tilde_sq: Fraction
    d_max: int

    def _root(self, q: Fraction, prec: int):
        r = _exact_sqrt(q)
        return r if r is not None else Ball(q, 0, prec).sqrt()

    def delta(self, prec: int = 128):
        return self._root(self.delta_sq, prec)

    def delta_tilde(self, prec: int = 128):
        return self._root(self.delta_tilde_sq, prec)


def theorem4_constants(T) -> Theorem4Constants:
    """
    Examples
    --------
    >>> k = theorem4_constants(Fraction(1, 2))
    >>> k.delta_sq, k.delta_tilde_sq, k.d_max
    (Fraction(1, 2), Fraction(1, 1), 2)
    """
    T = _rat(T)
    if T < Fraction(1, 2):
        raise HypothesisViolation("T must be at least 1/2")
    q = 1 / (1 + 4 * T * T)
    return Theorem4Constants(T, q, half_sector_delta_sq(q), math.floor(1 + 4 * T * T))


def _half_factors(T: Fraction, rng, real_pairs: tuple, quads: tuple) -> list:
    """Factors of ``f0`` (in ``w = z^2``) whose pullback has zeros in the gapped strip."""
    fs = []
    for _ in range(int(rng.integers(quads[0], quads[1] + 1))):
        a = T + _nonzero_rat(rng, 1, 4)
        b = Fraction(int(rng.integers(1, 8)), 16)
        s, p = a * a - b * b, 4 * a * a * b * b
        # (w - s)^2 + p: the zeros +-a +-ib of f map to s +- 2abi
        fs.append(RealPoly((s * s + p, -2 * s, 1)))
    for _ in range(int(rng.integers(real_pairs[0], real_pairs[1] + 1))):
        r = _nonzero_rat(rng, 0, 3 * T + 5)
        fs.append(RealPoly((-r * r, 1)))
    return fs


def random_even_strip_poly(T, rng=None, *, real_pairs=(0, 2), quads=(1, 2)) -> tuple[RealPoly, RealPoly]:
    """Even rational ``f`` with zeros in ``{|Im z| < 1/2, |Re z| > T} union R``.

    Returns ``(f, f0)`` with ``f(z) = f0(z^2)``.  Nonreal zeros come as
    quadruples ``+-a +-ib`` with ``a > T`` and ``0 < b <= 7/16``.
    """
    T = _rat(T)
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    f0 = _product(_half_factors(T, rng, real_pairs, quads))
    return f0.compose_square(), f0


def _identity_failures(f: RealPoly, f0: RealPoly) -> list:
    z = RealPoly((0, 1))
    d1, d2 = differentiate(f0), differentiate(f0, 2)
    out = []
    if differentiate(f) != z * d1.compose_square() * 2:
        out.append("f'(z) = 2z f0'(z^2)")
    if differentiate(f, 2) != (d1.compose_square() + z * z * d2.compose_square() * 2) * 2:
        out.append("f''(z) = 2(f0'(z^2) + 2z^2 f0''(z^2))")
    g = z * d1 * d1
    if differentiate(g) != d1 * (d1 + z * d2 * 2):
        out.append("g'(z) = f0'(z)(f0'(z) + 2z f0''(z))")
    return out


def verify_theorem4(cfg: TrialConfig, T=None) -> SuiteReport:
    """Theorem 4 mechanism on even polynomials standing in for entire functions.

    For each trial: the zeros of f are certified in the gapped strip; the three
    derivative identities hold exactly; the zeros of every ``f0^(k)`` are
    certified in the half sector; and ``J(f^(n); d)`` is hyperbolic for every
    ``n + d <= deg f`` with ``d <= 1 + 4T^2``.
    """
    T = _rat(T if T is not None else cfg.T)
    k = theorem4_constants(T)
    strip = GappedStrip(T)
    half = HalfSector(k.delta_tilde_sq)
    bad, undecided, checks = [], 0, 0
    for i in range(cfg.trials):
        rng = cfg.rng(i)
        f, f0 = random_even_strip_poly(T, rng)
        info = {"f0": _poly_str(f0), "T": str(T)}
        try:
            zs = region_contains(all_roots(f, cfg.prec), strip).status
        except NonConvergence:
            zs = Membership.INDETERMINATE
        checks += 1
        if zs is not Membership.YES:
            # a generator bug, not a theorem failure; report it loudly anyway
            bad.append(Counterexample(i, f"zeros of f not certified in the strip ({zs.value})", info))
            continue
        for msg in _identity_failures(f, f0):
            bad.append(Counterexample(i, f"identity failed: {msg}", info))
        checks += 3
        for kk in range(f0.degree):
            dk = differentiate(f0, kk)
            try:
                st = region_contains(all_roots(dk, cfg.prec), half).status
            except NonConvergence:
                st = Membership.INDETERMINATE
            checks += 1
            if st is Membership.NO:
                bad.append(Counterexample(i, f"zeros of f0^({kk}) leave the half sector", info))
            elif st is Membership.INDETERMINATE:
                undecided += 1
        jet = poly_jet(f)
        M = f.degree
        for n in range(M + 1):
            for d in range(1, min(k.d_max, M - n) + 1):
                st = _verdict(jensen(jet, n, d), cfg.mode, cfg.prec).status
                checks += 1
                if st is Status.NOT_HYPERBOLIC:
                    bad.append(Counterexample(i, f"J(f^({n});{d}) not hyperbolic", info))
                elif st is Status.INDETERMINATE:
                    undecided += 1
    return SuiteReport("theorem4", cfg.trials, checks, tuple(bad), undecided,
                       {"T": str(T), "delta_sq": str(k.delta_sq), "delta_tilde_sq": str(k.delta_tilde_sq),
                        "d_max": k.d_max})


# ---------------------------------------------------------------------------
# bounds


def _ceil_rational_power(base: Fraction, e: Fraction) -> int:
    """Exact ``ceil(base**e)`` for rational ``base > 0`` and ``e >= 0``."""
    p, q = e.numerator, e.denominator
    A, B = base.numerator ** p, base.denominator ** p  # base**e = (A/B)**(1/q)
    m = int(gmpy2.iroot(gmpy2.mpz(A // B), q)[0])
    while m ** q * B < A:
        m += 1
    return m


def bound_theorem1(c, n1: int, d: int, prec: int = 128) -> int:
    """Certified ``ceil(max(n1, (d/4)^(c/2)))``.

    Rational ``c`` with a small denominator is handled exactly; a ball ``c``
    uses outward-rounded ball arithmetic at the endpoint that maximizes the
    power.

    Examples
    --------
    >>> bound_theorem1(Fraction(11, 10), 3, 100)
    6
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    base = Fraction(d, 4)
    if isinstance(c, Ball) and not c.is_exact():
        if c.lower() <= 0:
            raise ValueError("c must be positive")
        end = c.upper() if base >= 1 else c.lower()
        val = (Ball(base, 0, prec).log() * Ball(end, 0, prec)).mul_2exp(-1).exp()
        x = math.ceil(as_fraction(val.upper()))
    else:
        cr = _rat(c)
        if cr <= 0:
            raise ValueError("c must be positive")
        if cr.denominator <= 10 ** 6:
            x = _ceil_rational_power(base, cr / 2)
        else:
            val = (Ball(base, 0, prec).log() * Ball(cr, 0, prec)).mul_2exp(-1).exp()
            x = math.ceil(as_fraction(val.upper()))
    return max(int(n1), x)


def bound_theorem4(T) -> tuple[int, int]:
    """``(floor(1 + 4T^2), floor(T^2 (1 + T^-2/4)^2))``, rounded inward.

    Both expressions increase with T on ``T >= 1/2``, so a ball T is replaced
    by its lower endpoint.

    Examples
    --------
    >>> bound_theorem4(Fraction(1, 2))
    (2, 1)
    """
    if isinstance(T, Ball) and not T.is_exact():
        T = as_fraction(T.lower())
    T = _rat(T)
    if T < Fraction(1, 2):
        raise HypothesisViolation("T must be at least 1/2")
    d_xi = math.floor(1 + 4 * T * T)
    d_xi0 = math.floor(T * T * (1 + 1 / (4 * T * T)) ** 2)
    return d_xi, d_xi0


# ---------------------------------------------------------------------------
# scans


@dataclass(frozen=True)
class ScanResult:
    """Verdict grid over ``(n, d)`` with the per-d empirical first n.

    ``first_all_hyperbolic_n[d]`` is the least scanned n from which every
    scanned cell in that column is Hyperbolic (None if the last one is not).
    It says nothing about n beyond the scanned range, hence ``caveat``.
    """

    grid: dict
    n_range: tuple
    d_range: tuple
    first_all_hyperbolic_n: dict
    label: str = ""
    caveat: str = EMPIRICAL_CAVEAT

    def count(self, status: Status) -> int:
        return sum(v.status is status for v in self.grid.values())

    @property
    def all_hyperbolic(self) -> bool:
        return self.count(Status.HYPERBOLIC) == len(self.grid)


def _as_range(r) -> tuple:
    if isinstance(r, range):
        return tuple(r)
    return tuple(r)


def scan_jensen_grid(jet: TaylorJet, d_range: Iterable[int], n_range: Iterable[int],
                     mode: Optional[Mode] = None, prec: int = 256) -> ScanResult:
    """Hyperbolicity of ``J(f^(n); d)`` on a rectangle of ``(n, d)``.

    ``mode`` defaults to exact for exact jets and ball otherwise.

    Examples
    --------
    >>> res = scan_jensen_grid(TaylorJet.exp(6), range(1, 4), range(0, 3))
    >>> res.all_hyperbolic
    True
    """
    ds, ns = _as_range(d_range), _as_range(n_range)
    if not ds or not ns:
        raise ValueError("empty scan range")
    if max(ns) + max(ds) > jet.M:
        raise JetTooShort(f"scan needs derivatives up to {max(ns) + max(ds)}, jet has {jet.M}; increase M")
    mode = mode or (Mode.EXACT if jet.is_exact else Mode.BALL)
    if mode is Mode.EXACT and not jet.is_exact:
        raise ValueError("exact mode needs an exact jet")
    grid = {}
    for n in ns:
        for d in ds:
            grid[(n, d)] = _verdict(jensen(jet, n, d), mode, prec)
    first = {}
    for d in ds:
        start = None
        for n in sorted(ns, reverse=True):
            if grid[(n, d)].status is not Status.HYPERBOLIC:
                break
            start = n
        first[d] = start
    return ScanResult(grid, ns, ds, first, jet.label)


@dataclass(frozen=True)
class Theorem2Row:
    n: int
    T: Ball
    tail_bound: Fraction
    roots_in_disk: int
    nonreal_in_disk: int
    status: Membership


@dataclass(frozen=True)
class Theorem2Report:
    """Per-n containment of truncation roots in the gapped strip ``T = n^(1/c)``.

    Only roots of the Taylor truncation inside the disk are examined; they are
    labelled as truncation roots and are not claimed to be zeros of ``f^(n)``.
    ``tail_bound`` bounds ``|f^(n) - truncation|`` on the disk.  ``empirical_n1``
    is the least scanned n from which every row reads Yes.
    """

    rows: tuple
    c: Fraction
    disk_radius: Fraction
    trunc: int
    empirical_n1: Optional[int]
    label: str = ""
    caveat: str = EMPIRICAL_CAVEAT


def _tail_bound(env: CoefficientEnvelope, trunc: int, R: Fraction) -> Optional[Fraction]:
    """``sum_{k > trunc} env(k) R^k / k!`` via a geometric majorant (None if it diverges)."""
    k0 = trunc + 1
    ratio = Fraction(k0 + 2, k0 + 1) ** env.p * Fraction(env.A) * R / (k0 + 1)
    if ratio >= 1:
        return None
    return env(k0) * R ** k0 / factorial(k0) / (1 - ratio)


def _strip_T(n: int, c: Fraction, prec: int) -> Ball:
    if n == 0:
        return Ball(0, 0, prec)
    if n == 1:
        return Ball(1, 0, prec)
    return (Ball(n, 0, prec).log() / Ball(c, 0, prec)).exp()


def scan_theorem2(jet: TaylorJet, c, n_range: Iterable[int], disk_radius, trunc: int,
                  prec: int = 128) -> Theorem2Report:
    """Empirical scan of where nonreal zeros of ``f^(n)`` may sit.

    For each n the Taylor section of ``f^(n)`` of degree ``trunc`` is solved;
    root disks meeting ``|z| <= disk_radius`` are tested against
    ``{|Im z| < 1/2, |Re z| >= n^(1/c)} union R``.
    """
    c = _rat(c)
    R = _rat(disk_radius)
    ns = _as_range(n_range)
    if jet.decay is None:
        raise TailBoundUnavailable("the jet carries no coefficient decay bound")
    if jet.order_hint is not None and c <= Fraction(repr(float(jet.order_hint))):
        raise ValueError("c must exceed the order of the function")
    if max(ns) + trunc > jet.M:
        raise JetTooShort(f"scan needs derivatives up to {max(ns) + trunc}, jet has {jet.M}; increase M")
    rows = []
    for n in ns:
        sj = jet.shift(n)
        tail = _tail_bound(sj.decay, trunc, R)
        P = RealPoly(tuple(sj.values[k] / factorial(k) for k in range(trunc + 1)))
        T = _strip_T(n, c, prec)
        region = GappedStrip(T)
        inside = nonreal = 0
        status = Membership.YES
        if P.degree >= 1:
            try:
                rs = all_roots(P, prec)
            except NonConvergence as exc:
                rs = exc.partial
                status = Membership.INDETERMINATE
            for z, r, real in zip(rs.centers, rs.radii, rs.real):
                x, y = as_fraction(z.real), as_fraction(z.imag)
                rr = as_fraction(r)
                if x * x + y * y > (R + rr) ** 2:
                    continue
                inside += 1
                if not real:
                    nonreal += 1
                m = region.disk(x, y, rr, real)
                if m is Membership.NO:
                    status = Membership.NO
                elif m is Membership.INDETERMINATE and status is Membership.YES:
                    status = Membership.INDETERMINATE
        rows.append(Theorem2Row(n, T, tail if tail is not None else Fraction(10) ** 100,
                                inside, nonreal, status))
    n1 = None
    for row in reversed(rows):
        if row.status is not Membership.YES:
            break
        n1 = row.n
    return Theorem2Report(tuple(rows), c, R, trunc, n1, jet.label)


# ---------------------------------------------------------------------------
# jets used by the scans


def cos_product_jet(P: RealPoly, M: int) -> TaylorJet:
    """Exact jet of ``P(z) cos z`` up to order M, with a decay envelope.

    ``|(P cos)^(k)(0)| <= sum_j |p_j| (k+1)^j <= (sum |p_j|) (k+1)^deg P``.
    """
    if not P.is_exact:
        raise TypeError("cos_product_jet needs exact coefficients")
    vals = []
    for k in range(M + 1):
        s = Fraction(0)
        for j, pj in enumerate(P.coeffs[:k + 1]):
            if pj and (k - j) % 2 == 0:
                s += pj * (factorial(k) // factorial(k - j)) * (-1) ** ((k - j) // 2)
        vals.append(s)
    even = all(P[k] == 0 for k in range(1, len(P.coeffs), 2))
    env = CoefficientEnvelope(sum(abs(p) for p in P.coeffs), max(P.degree, 0), Fraction(1))
    return TaylorJet(tuple(vals), parity="even" if even else "none", order_hint=1,
                     label=f"({_poly_str(P)}) cos z", decay=env)


def xi0_jet(order: int, prec: int = 256, method="phi", **kw) -> TaylorJet:
    """Jet of ``Xi_0`` (``Xi(t) = Xi_0(t^2)``) up to ``order``."""
    from .specialfn import XiJetRequest, xi_taylor

    return half_form(xi_taylor(XiJetRequest(M=2 * order, prec=prec, method=method, **kw)))
