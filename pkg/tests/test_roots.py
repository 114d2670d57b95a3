"""Sturm counting, hyperbolicity certificates, root disks and region queries."""

import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jensenlab.numeric import Ball, CBall, DomainError
from jensenlab.poly import AmbiguousDegree, RealPoly, differentiate, evaluate
from jensenlab.roots import (
    GappedStrip,
    HalfSector,
    Membership,
    Parabolic,
    Sector,
    Status,
    Strip,
    all_roots,
    convex_hull,
    gauss_lucas_check,
    hull_dist2,
    is_hyperbolic,
    point_in_region,
    region_contains,
    sector_square_member,
    squarefree_factorization,
    squarefree_part,
    sturm_count,
)

F = Fraction
z = RealPoly((0, 1))
INF = float("inf")


def same_up_to_constant(p, q):
    return p.monic() == q.monic()


# ------------------------------------------------------------ exact machinery

def test_squarefree_examples():
    P = RealPoly.from_roots([1, 1, -2])
    assert same_up_to_constant(squarefree_part(P), RealPoly.from_roots([1, -2]))
    Q = RealPoly.from_roots([3, F(1, 2), -7])
    assert same_up_to_constant(squarefree_part(Q), Q)
    assert squarefree_part(RealPoly((5,))).degree == 0


def test_squarefree_factorization_multiplicities():
    P = RealPoly.from_roots([1, 1, 1, 2, 2, 5], lead=3)
    mults = {m: f.degree for f, m in squarefree_factorization(P)}
    assert mults == {1: 1, 2: 1, 3: 1}


@pytest.mark.parametrize("P, a, b, expected", [
    (z * z - 1, -INF, INF, 2),
    (z * z + 1, -INF, INF, 0),
    (z ** 3 - z, 0, 1, 1),
    (z ** 3 - z, -1, 1, 2),
    (z ** 3 - z, -INF, 0, 2),
])
def test_sturm_count_examples(P, a, b, expected):
    assert sturm_count(P, a, b) == expected


def test_sturm_count_matches_enumeration():
    rng = random.Random(3)
    for _ in range(200):
        roots = sorted({F(rng.randint(-30, 30), rng.randint(1, 4)) for _ in range(rng.randint(1, 8))})
        P = RealPoly.from_roots(roots) * (z * z + F(rng.randint(1, 9)))
        a, b = sorted(F(rng.randint(-40, 40), rng.randint(1, 5)) for _ in range(2))
        if a == b:
            continue
        assert sturm_count(P, a, b) == sum(1 for r in roots if a < r <= b)


# ------------------------------------------------------------ is_hyperbolic

def test_is_hyperbolic_examples():
    v = is_hyperbolic(z * z + 1)
    assert v.status is Status.NOT_HYPERBOLIC
    assert not v.witness.im.contains_zero()
    assert v.witness.contains(1j) or v.witness.contains(-1j)
    assert is_hyperbolic(RealPoly.from_roots([1, 1, -2])).status is Status.HYPERBOLIC
    assert is_hyperbolic(2 * z * z + 4 * z + 2).status is Status.HYPERBOLIC


def test_ball_mode_verdicts():
    P = RealPoly.from_roots([1, 2, 3]).to_balls(128)
    assert is_hyperbolic(P).status is Status.HYPERBOLIC
    assert is_hyperbolic((z * z + 1).to_balls(128)).status is Status.NOT_HYPERBOLIC
    # a double root under perturbation cannot be certified either way
    fuzzy = RealPoly((Ball(1, F(1, 10 ** 20), 128), Ball(-2, 0, 128), Ball(1, 0, 128)))
    v = is_hyperbolic(fuzzy)
    assert v.status is Status.INDETERMINATE


def test_ball_mode_ambiguous_degree():
    with pytest.raises(AmbiguousDegree):
        is_hyperbolic(RealPoly((Ball(1), Ball(1), Ball(0, F(1, 100)))))


def _oracle_hyperbolic(P):
    """All roots real, judged from high-precision numerical roots."""
    cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(P.coeffs)]
    with mpmath.workdps(60):
        roots = mpmath.polyroots(cs, maxsteps=600, extraprec=400)
    return all(abs(mpmath.im(r)) < mpmath.mpf(10) ** -12 for r in roots)


def _random_case(rng):
    """A random polynomial and its known verdict (None: ask the numerical oracle).

    Random coefficients almost surely give simple roots, which the numerical
    oracle handles well.  Products of repeated real linear factors, with or
    without a definite quadratic factor, have a verdict fixed by construction.
    """
    kind = rng.randrange(3)
    deg = rng.randint(1, 12)
    if kind == 0:
        cs = [F(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(deg)]
        return RealPoly(tuple(cs) + (F(rng.choice([-1, 1]) * rng.randint(1, 5)),)), None
    pool = [F(rng.randint(-12, 12), rng.randint(1, 3)) for _ in range(4)]
    roots = [rng.choice(pool) for _ in range(min(deg, 10))]
    P = RealPoly.from_roots(roots, lead=F(rng.randint(1, 7), rng.randint(1, 3)))
    if kind == 2:
        a, b = F(rng.randint(-9, 9), 2), F(rng.randint(1, 30), 8)
        return P * ((z - a) * (z - a) + b * b), False
    return P, True


def test_exact_verdict_agrees_with_oracle():
    rng = random.Random(1729)
    checked = 0
    while checked < 1000:
        P, known = _random_case(rng)
        if P.degree < 1:
            continue
        expected = _oracle_hyperbolic(P) if known is None else known
        assert (is_hyperbolic(P).status is Status.HYPERBOLIC) == expected, P
        checked += 1


# ------------------------------------------------------------ all_roots

def test_all_roots_unit_circle_pair():
    rs = all_roots(z * z + 1, 128)
    found = sorted(complex(c).imag for c in rs.centers)
    assert found == pytest.approx([-1, 1])
    assert all(abs(complex(c).real) < 1e-30 for c in rs.centers)


def test_all_roots_quarter_pair():
    rs = all_roots(z * z + F(1, 16), 128)
    assert sorted(complex(c).imag for c in rs.centers) == pytest.approx([-0.25, 0.25])
    assert all(r.contains(0.25j) or r.contains(-0.25j) for r in rs.roots)


def test_wilkinson5_at_256_bits():
    rs = all_roots(RealPoly.from_roots(range(1, 6)), 256)
    assert rs.certified and rs.degree == 5
    balls = sorted(rs.roots, key=lambda b: float(b.re))
    for k, b in enumerate(balls, start=1):
        assert b.re.contains(k) and b.im.contains(0)
    assert max(float(r) for r in rs.radii) < 1e-30


def test_multiplicities_sum_to_degree():
    P = RealPoly.from_roots([2, 2, 2, -1]) * (z * z + 4)
    rs = all_roots(P, 128)
    assert rs.degree == 6
    assert sorted(rs.multiplicities) == [1, 1, 1, 3]


def test_roots_need_positive_degree():
    with pytest.raises(ValueError):
        all_roots(RealPoly((3,)), 64)


def test_root_disks_contain_true_roots_and_p_vanishes():
    rng = random.Random(8)
    for _ in range(40):
        deg = rng.randint(2, 10)
        P = RealPoly(tuple(F(rng.randint(-9, 9)) for _ in range(deg)) + (F(1),))
        rs = all_roots(P, 128)
        cs = [mpmath.mpf(int(c)) for c in reversed(P.coeffs)]
        with mpmath.workdps(50):
            ref = mpmath.polyroots(cs, maxsteps=400, extraprec=300)
        for root in ref:
            w = complex(root)
            assert any(abs(complex(c) - w) <= float(r) * (1 + 1e-9) + 1e-30
                       for c, r in zip(rs.centers, rs.radii))
        for ball in rs.roots:
            v = evaluate(P, ball)
            assert v.re.contains_zero() and v.im.contains_zero()


# ------------------------------------------------------------ regions

def _rs(*points):
    """Certified roots of the real polynomial with the given roots (plus conjugates)."""
    P = RealPoly((1,))
    for p in points:
        if p.imag == 0:
            P = P * (z - F(p.real))
        else:
            a, b = F(p.real), F(p.imag)
            P = P * ((z - a) * (z - a) + b * b)
    return all_roots(P, 128)


def test_region_contains_examples():
    assert region_contains(_rs(0.25j), Strip()).status is Membership.YES
    assert region_contains(_rs(1 + 1j), Sector.from_delta(1)).status is Membership.YES
    rep = region_contains(_rs(1j), Sector.from_delta(F(1, 2)))
    assert rep.status is Membership.NO
    assert rep.witness.contains(1j) or rep.witness.contains(-1j)


def test_open_strip_boundary_is_not_inside():
    assert point_in_region((0, F(1, 2)), Strip()) is Membership.NO
    assert point_in_region((0, F(1, 2)), Sector.from_delta(1)) is Membership.YES
    assert point_in_region((F(-1, 4), 0), Parabolic()) is Membership.NO
    assert point_in_region((0, 0), Parabolic()) is Membership.YES


def test_gapped_strip_and_half_sector_points():
    G = GappedStrip(3)
    assert point_in_region((5, F(1, 4)), G) is Membership.YES
    assert point_in_region((2, F(1, 4)), G) is Membership.NO
    assert point_in_region((2, 0), G) is Membership.YES
    H = HalfSector(1)
    assert point_in_region((1, 1), H) is Membership.YES
    assert point_in_region((-1, 0), H) is Membership.NO


def test_region_monotonicity():
    rng = random.Random(21)
    for _ in range(60):
        pts = [complex(F(rng.randint(-40, 40), 8), F(rng.randint(1, 30), 8)) for _ in range(rng.randint(1, 3))]
        rs = _rs(*pts)
        for family in (
            [Sector(F(k, 8)) for k in range(1, 9)],
            [GappedStrip(F(t, 4)) for t in range(12, -1, -1)],
            [Strip(F(h, 8)) for h in range(1, 24)],
        ):
            seen_yes = False
            for region in family:
                st_ = region_contains(rs, region).status
                if seen_yes:
                    assert st_ is not Membership.NO
                seen_yes = seen_yes or st_ is Membership.YES


# ------------------------------------------------------------ sector squaring

def test_sector_square_examples():
    r = sector_square_member((1, 1), delta_sq=F(1, 2))
    assert r.in_sector is Membership.YES and r.square_in_half_sector is Membership.YES
    assert r.agreement == "agree"
    r = sector_square_member((2, 0), delta_sq=F(1, 4))
    assert r.agreement == "agree" and r.in_sector is Membership.YES


def test_sector_square_rejects_wide_delta():
    with pytest.raises(DomainError):
        sector_square_member((1, 1), delta=F(9, 10))


coord = st.fractions(min_value=-50, max_value=50, max_denominator=1000)


@settings(max_examples=500, deadline=None)
@given(coord, coord, st.sampled_from([F(1, 100), F(1, 16), F(1, 4), F(1, 3), F(1, 2)]))
def test_sector_square_never_disagrees(x, y, q):
    assert sector_square_member((x, y), delta_sq=q).agreement == "agree"


def test_sector_square_boundary_identity():
    rng = random.Random(4)
    for _ in range(500):
        x, y = F(rng.randint(-99, 99), 7), F(rng.randint(-99, 99), 11)
        wx, wy = x * x - y * y, 2 * x * y
        assert abs(wy) == 2 * abs(x) * abs(y)
        assert wx * wx + wy * wy == (x * x + y * y) ** 2


def test_sector_square_ball_input():
    zb = CBall(Ball(3, F(1, 1000)), Ball(1, F(1, 1000)))
    assert sector_square_member(zb, delta_sq=F(1, 2)).agreement == "agree"


# ------------------------------------------------------------ Gauss-Lucas

def test_convex_hull_and_distance():
    hull = convex_hull([(0, 0), (2, 0), (1, 1), (1, F(1, 2)), (0, 2), (2, 2)])
    assert set(hull) == {(0, 0), (2, 0), (2, 2), (0, 2)}
    assert hull_dist2((1, 1), hull) == 0
    assert hull_dist2((3, 1), hull) == 1


@pytest.mark.parametrize("P", [
    z * z - 1,
    (z * z + 1) * (z - 3),
    RealPoly.from_roots([F(-7, 3), F(5, 2)]),
    (z - 4) * (z - 4) + 9,
])
def test_gauss_lucas_examples(P):
    assert gauss_lucas_check(P, 128).passed


def test_gauss_lucas_degree_two_midpoint():
    rng = random.Random(6)
    for _ in range(30):
        a, b = F(rng.randint(-50, 50), 3), F(rng.randint(-50, 50), 5)
        if a == b:
            continue
        P = RealPoly.from_roots([a, b])
        assert differentiate(P).monic() == RealPoly((-(a + b) / 2, 1))
        assert gauss_lucas_check(P, 128).passed


def test_gauss_lucas_random_polynomials():
    rng = random.Random(12)
    for _ in range(60):
        deg = rng.randint(2, 9)
        P = RealPoly(tuple(F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(deg)) + (F(1),))
        assert gauss_lucas_check(P, 128).status is not Membership.NO
