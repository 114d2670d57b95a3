"""Polynomial algebra, Jensen polynomials and the half-form transform."""

import random
from fractions import Fraction
from math import comb, factorial

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jensenlab.numeric import Ball, CBall
from jensenlab.poly import (
    AmbiguousDegree,
    DegreeError,
    JetTooShort,
    ParityError,
    RealPoly,
    TaylorJet,
    compose_obreschkoff,
    differentiate,
    evaluate,
    half_form,
    jensen,
    poly_jet,
    reverse,
    truncate_taylor,
)

z = RealPoly((0, 1))
F = Fraction

rat = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(rat, min_size=1, max_size=9).map(lambda cs: RealPoly(tuple(cs)))
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def rand_poly(rng, deg, lo=-9, hi=9):
    cs = [F(rng.randint(lo, hi), rng.randint(1, 6)) for _ in range(deg)]
    return RealPoly(tuple(cs) + (F(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4)),))


# ------------------------------------------------------------ RealPoly

def test_trailing_zeros_stripped_and_zero_poly():
    assert RealPoly((1, 2, 0, 0)).coeffs == (1, 2)
    assert RealPoly((0, 0)).is_zero()
    assert RealPoly((0,)).degree == -1


def test_ball_coefficients_promote_whole_poly():
    p = RealPoly((F(1, 3), Ball(2, 0, 100)))
    assert not p.is_exact and all(isinstance(c, Ball) for c in p.coeffs)
    assert p.prec == 100


def test_ambiguous_degree_for_straddling_lead():
    p = RealPoly((Ball(1), Ball(0, F(1, 10))))
    with pytest.raises(AmbiguousDegree):
        _ = p.degree


def test_divmod_reconstructs():
    rng = random.Random(5)
    for _ in range(50):
        a, b = rand_poly(rng, rng.randint(0, 8)), rand_poly(rng, rng.randint(0, 4))
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.is_zero() or r.degree < b.degree


# ------------------------------------------------------------ differentiate

@pytest.mark.parametrize("P, n, expected", [
    (z * z + 1, 1, 2 * z),
    (z * z + 1, 0, z * z + 1),
    (z * z + 1, 3, RealPoly((0,))),
    (z ** 5, 2, 20 * z ** 3),
])
def test_differentiate_examples(P, n, expected):
    assert differentiate(P, n) == expected


def test_differentiate_rejects_negative_order():
    with pytest.raises(ValueError):
        differentiate(z, -1)


# ------------------------------------------------------------ jensen

def test_jensen_degree_one():
    jet = TaylorJet((F(3), F(5), F(7)))
    assert jensen(jet, 0, 1) == RealPoly((3, 5))


def test_jensen_degree_two():
    a, b, c = F(2), F(-1, 3), F(9)
    assert jensen(TaylorJet((a, b, c)), 0, 2) == RealPoly((a, 2 * b, c))


def test_jensen_of_exp_is_binomial_power():
    assert jensen(TaylorJet.exp(10), 3, 2) == (1 + z) ** 2
    for d in range(1, 8):
        assert jensen(TaylorJet.exp(12), 4, d) == (1 + z) ** d


def test_jensen_brute_force_binomial_sum():
    rng = random.Random(1)
    vals = [F(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(15)]
    jet = TaylorJet(tuple(vals))
    for n in range(5):
        for d in range(10 - n):
            expected = RealPoly((0,))
            for k in range(d + 1):
                expected = expected + RealPoly.monomial(k, comb(d, k) * vals[n + k])
            assert jensen(jet, n, d) == expected


def test_jensen_shift_consistency():
    rng = random.Random(2)
    jet = TaylorJet(tuple(F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(14)))
    for n in range(6):
        for d in range(14 - n):
            assert jensen(jet, n, d) == jensen(jet.shift(n), 0, d)


def test_jensen_jet_too_short():
    with pytest.raises(JetTooShort):
        jensen(TaylorJet.exp(4), 2, 3)


def test_jensen_ball_mode_adds_no_rounding():
    vals = tuple(Ball(F(1, 3) * k, F(1, 10 ** 30), 128) for k in range(1, 8))
    J = jensen(TaylorJet(vals), 1, 5)
    for k, c in enumerate(J.coeffs):
        assert c.contains(comb(5, k) * F(k + 2, 3))


# ------------------------------------------------------------ half_form

def test_half_form_of_z_squared():
    jet = TaylorJet((0, 0, 2, 0, 0), parity="even")
    assert half_form(jet).values[:2] == (0, 1)


def test_half_form_of_constant():
    assert half_form(TaylorJet((1,), parity="even")).values == (1,)


def test_half_form_of_cos_matches_cos_sqrt_series():
    f0 = half_form(TaylorJet.cos(24))
    # cos(sqrt(w)) = sum (-1)^k w^k / (2k)!
    for k, v in enumerate(f0.values):
        assert v == F((-1) ** k * factorial(k), factorial(2 * k))
    with mpmath.workdps(40):
        w = mpmath.mpf("0.37")
        series = sum(mpmath.mpf(v.numerator) / v.denominator * w ** k / factorial(k)
                     for k, v in enumerate(f0.values))
        assert abs(series - mpmath.cos(mpmath.sqrt(w))) < mpmath.mpf(10) ** -30


def test_half_form_needs_even_jet():
    with pytest.raises(ParityError):
        half_form(TaylorJet.exp(4))
    with pytest.raises(ParityError):
        TaylorJet((1, 1, 1), parity="even")


@settings(max_examples=60, deadline=None)
@given(st.lists(rat, min_size=1, max_size=7))
def test_half_form_round_trip(cs):
    f0 = RealPoly(tuple(cs))
    f = f0.compose_square()
    m = max(f0.degree, 0)
    jet = TaylorJet(poly_jet(f, 2 * m + 1).values, parity="even")
    assert truncate_taylor(half_form(jet), m).compose_square() == f


# ------------------------------------------------------------ Obreschkoff

def test_compose_with_one_is_identity():
    Q = RealPoly((3, -1, 4, 1))
    assert compose_obreschkoff(RealPoly((1,)), Q) == Q


def test_compose_with_z_squared_is_second_derivative():
    Q = RealPoly((3, -1, 4, 1, 5))
    assert compose_obreschkoff(z * z, Q) == differentiate(Q, 2)


def test_compose_worked_example():
    assert compose_obreschkoff(z * z + 2 * z + 2, z * z) == 2 * z * z + 4 * z + 2


def test_compose_rejects_zero():
    with pytest.raises(ValueError):
        compose_obreschkoff(RealPoly((0,)), z)


@settings(max_examples=80, deadline=None)
@given(nonzero_polys, nonzero_polys, nonzero_polys, rat, rat)
def test_compose_is_linear_in_P(P1, P2, Q, a, b):
    combo = P1 * a + P2 * b
    lhs = compose_obreschkoff(combo, Q) if not combo.is_zero() else RealPoly((0,))
    rhs = compose_obreschkoff(P1, Q) * a + compose_obreschkoff(P2, Q) * b
    assert lhs == rhs


# ------------------------------------------------------------ reverse

def test_reverse_examples():
    assert reverse(RealPoly((1, 2)), 1) == RealPoly((2, 1))
    assert reverse(z ** 4, 4) == RealPoly((1,))
    assert reverse(RealPoly((1, 2)), 3) == RealPoly((0, 0, 2, 1))


def test_reverse_too_small_degree():
    with pytest.raises(DegreeError):
        reverse(z ** 3, 2)


@settings(max_examples=150, deadline=None)
@given(nonzero_polys, st.integers(min_value=0, max_value=6))
def test_corollary_identity(P, extra):
    d = P.degree + extra
    lhs = reverse(compose_obreschkoff(P, z ** d), d)
    assert lhs == jensen(poly_jet(P, d), 0, d)


# ------------------------------------------------------------ truncate / eval

def test_truncate_examples():
    assert truncate_taylor(TaylorJet.exp(6), 2) == RealPoly((1, 1, F(1, 2)))
    assert truncate_taylor(TaylorJet.cos(6), 4) == RealPoly((1, 0, F(-1, 2), 0, F(1, 24)))
    assert truncate_taylor(TaylorJet.exp(6), 0) == RealPoly((1,))
    with pytest.raises(JetTooShort):
        truncate_taylor(TaylorJet.exp(3), 4)


def test_eval_examples():
    v = evaluate(z * z + 1, CBall(0, 1))
    assert v.re.contains(0) and v.im.contains(0)
    assert evaluate(RealPoly((5,)), F(17, 3)) == 5
    assert evaluate(RealPoly.from_roots([1, 2]), 3) == 2
    assert evaluate(RealPoly.from_roots([1, 2]), Ball(3)).contains(2)


@settings(max_examples=60, deadline=None)
@given(nonzero_polys, rat, rat)
def test_eval_encloses_exact_complex_value(P, x, y):
    w = evaluate(P, CBall(x, y, 128))
    exact_re, exact_im = F(0), F(0)
    for c in reversed(P.coeffs):
        exact_re, exact_im = exact_re * x - exact_im * y + c, exact_re * y + exact_im * x
    assert w.re.contains(exact_re) and w.im.contains(exact_im)


# ------------------------------------------------------------ proof identities

def test_even_polynomial_derivative_identities():
    rng = random.Random(9)
    for _ in range(100):
        f0 = rand_poly(rng, rng.randint(1, 8))
        f = f0.compose_square()
        d1, d2 = differentiate(f0), differentiate(f0, 2)
        assert differentiate(f) == 2 * z * d1.compose_square()
        assert differentiate(f, 2) == 2 * (d1.compose_square() + 2 * z * z * d2.compose_square())
        g = z * d1 * d1
        assert differentiate(g) == d1 * (d1 + 2 * z * d2)
