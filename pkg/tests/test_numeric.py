"""Ball and rational arithmetic.

Transcendental results are checked against mpmath interval arithmetic at a
higher precision, which is an independent rigorous implementation.
"""

import contextlib
import math
import random
from fractions import Fraction

import gmpy2
import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jensenlab.numeric import (
    Ball,
    CBall,
    DomainError,
    Rat,
    Sign,
    as_fraction,
    ball_arith,
    ball_sign,
)

PREC = 128


def iv_contains(ball, lo, hi):
    """Is ``ball`` compatible with a much narrower oracle enclosure [lo, hi]?

    An exact ball must sit inside the oracle interval; any other ball must
    cover it completely.
    """
    if ball.is_exact():
        return lo <= as_fraction(ball.mid) <= hi
    return ball.contains(Fraction(lo)) and ball.contains(Fraction(hi))


@contextlib.contextmanager
def iv_prec(bits):
    old = mpmath.iv.prec
    mpmath.iv.prec = bits
    try:
        yield
    finally:
        mpmath.iv.prec = old


def _raw_to_frac(raw):
    sign, man, exp, _ = raw
    v = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -v if sign else v


def iv_endpoints(x):
    """Exact rational endpoints of an mpmath interval."""
    lo, hi = x._mpi_
    return _raw_to_frac(lo), _raw_to_frac(hi)


# ---------------------------------------------------------------- examples

def test_add_exact_integers():
    s = ball_arith("add", Ball(1), Ball(2))
    assert s.is_exact() and s.contains(3)


def test_mul_interval_product():
    a = Ball(1, Fraction(1, 10), PREC)
    p = ball_arith("mul", a, a)
    assert p.contains(Fraction(81, 100)) and p.contains(Fraction(121, 100))


def test_sqrt_four_within_one_ulp():
    r = ball_arith("sqrt", Ball(4, 0, PREC))
    assert r.contains(2)
    ulp = Fraction(2) ** (2 - PREC)
    assert as_fraction(r.rad) <= ulp


@pytest.mark.parametrize("mid, rad, expected", [
    (3, 1, Sign.POSITIVE),
    (0, 1, Sign.STRADDLES),
    (-2, Fraction(1, 2), Sign.NEGATIVE),
    (1, 1, Sign.STRADDLES),
])
def test_ball_sign(mid, rad, expected):
    assert ball_sign(Ball(mid, rad)) is expected


@pytest.mark.parametrize("op, a, b", [
    ("div", Ball(1), Ball(0, 1)),
    ("sqrt", Ball(-1), None),
    ("sqrt", Ball(1, 2), None),
    ("log", Ball(0, 1), None),
    ("log", Ball(-3), None),
])
def test_domain_errors(op, a, b):
    with pytest.raises(DomainError):
        ball_arith(op, a, b)


def test_unknown_op_and_missing_operand():
    with pytest.raises(ValueError):
        ball_arith("tan", Ball(1))
    with pytest.raises(ValueError):
        ball_arith("add", Ball(1))


def test_minimum_precision_enforced():
    with pytest.raises(ValueError):
        Ball(1, 0, 8)


def test_balls_are_immutable():
    b = Ball(1)
    with pytest.raises(AttributeError):
        b.mid = 2
    with pytest.raises(AttributeError):
        CBall(1, 2).re = Ball(0)


def test_float_input_is_exact_binary_value():
    assert Ball(0.1).is_exact()
    assert Ball(0.1).contains(Fraction(0.1))


def test_pi_and_constants():
    with iv_prec(400):
        pi_lo, pi_hi = iv_endpoints(mpmath.iv.pi)
        ln2_lo, ln2_hi = iv_endpoints(mpmath.iv.log(2))
    assert iv_contains(Ball.pi(200), pi_lo, pi_hi)
    assert iv_contains(Ball.log2(200), ln2_lo, ln2_hi)


def test_intersect_and_union():
    a, b = Ball(1, 1), Ball(Fraction(3, 2), 1)
    i = a.intersect(b)
    assert i.contains(Fraction(1, 2)) and i.contains(2) and not i.contains(Fraction(5, 2))
    assert a.union(b).contains(Fraction(5, 2))
    with pytest.raises(DomainError):
        Ball(0, 1).intersect(Ball(5, 1))


def test_cball_basic_complex_arithmetic():
    i = CBall(0, 1)
    assert (i * i).contains(-1)
    z = CBall(3, 4, PREC)
    assert abs(z).contains(5)
    assert (z / z).contains(1)
    w = CBall(Fraction(1, 3), Fraction(-2, 7), PREC).exp()
    with mpmath.workprec(PREC + 64):
        ref = mpmath.exp(mpmath.mpc(mpmath.mpf(1) / 3, mpmath.mpf(-2) / 7))
    assert abs(complex(w) - complex(ref)) < 1e-15


# ---------------------------------------------------- inclusion isotonicity

small_rat = st.fractions(min_value=-8, max_value=8, max_denominator=64)
pos_rat = st.fractions(min_value=Fraction(1, 64), max_value=8, max_denominator=64)
rad_rat = st.fractions(min_value=0, max_value=Fraction(1, 8), max_denominator=64)
unit = st.fractions(min_value=-1, max_value=1, max_denominator=97)


def sample(mid, rad, t):
    return mid + rad * t


@settings(max_examples=200, deadline=None)
@given(small_rat, rad_rat, small_rat, rad_rat, unit, unit)
def test_exact_ops_contain_sampled_points(am, ar, bm, br, s, t):
    a, b = Ball(am, ar, PREC), Ball(bm, br, PREC)
    x, y = sample(am, ar, s), sample(bm, br, t)
    assert ball_arith("add", a, b).contains(x + y)
    assert ball_arith("sub", a, b).contains(x - y)
    assert ball_arith("mul", a, b).contains(x * y)
    if not b.contains_zero():
        assert ball_arith("div", a, b).contains(x / y)


def _check_unary(op, ball, x):
    """Compare against an mpmath interval computed at a higher precision."""
    fn = {"exp": mpmath.iv.exp, "log": mpmath.iv.log, "sqrt": mpmath.iv.sqrt,
          "cos": mpmath.iv.cos, "sin": mpmath.iv.sin}[op]
    with iv_prec(PREC + 80):
        X = mpmath.iv.mpf(x.numerator) / x.denominator
        lo, hi = iv_endpoints(fn(X))
    r = ball_arith(op, ball)
    assert iv_contains(r, lo, hi), (op, ball, x)


@settings(max_examples=150, deadline=None)
@given(small_rat, rad_rat, unit, st.sampled_from(["exp", "cos", "sin"]))
def test_entire_functions_contain_sampled_points(m, r, t, op):
    _check_unary(op, Ball(m, r, PREC), sample(m, r, t))


@settings(max_examples=150, deadline=None)
@given(pos_rat, st.fractions(min_value=0, max_value=Fraction(1, 128), max_denominator=256), unit,
       st.sampled_from(["log", "sqrt"]))
def test_positive_domain_functions_contain_sampled_points(m, r, t, op):
    _check_unary(op, Ball(m, r, PREC), sample(m, r, t))


@settings(max_examples=100, deadline=None)
@given(pos_rat, st.fractions(min_value=0, max_value=Fraction(1, 128), max_denominator=256),
       small_rat, unit)
def test_pow_contains_sampled_points(m, r, e, t):
    x = sample(m, r, t)
    got = ball_arith("pow", Ball(m, r, PREC), Ball(e, 0, PREC))
    if e.denominator == 1:
        assert got.contains(x ** int(e))
        return
    with iv_prec(PREC + 80):
        X = mpmath.iv.mpf(x.numerator) / x.denominator
        E = mpmath.iv.mpf(e.numerator) / e.denominator
        lo, hi = iv_endpoints(mpmath.iv.exp(E * mpmath.iv.log(X)))
    assert iv_contains(got, lo, hi)


@settings(max_examples=100, deadline=None)
@given(small_rat, small_rat, small_rat, small_rat)
def test_cball_mul_div_contain_exact(a, b, c, d):
    z, w = CBall(a, b, PREC), CBall(c, d, PREC)
    prod = complex(a, b) * complex(c, d)
    zr = (a * c - b * d, a * d + b * c)
    assert (z * w).re.contains(zr[0]) and (z * w).im.contains(zr[1])
    assert abs((z * w).re.mid - prod.real) < 1e-9
    if c or d:
        den = c * c + d * d
        q = ((a * c + b * d) / den, (b * c - a * d) / den)
        assert (z / w).re.contains(q[0]) and (z / w).im.contains(q[1])


# ------------------------------------------------- precision monotonicity

@pytest.mark.parametrize("op", ["exp", "log", "sqrt", "cos", "sin"])
def test_more_precision_never_widens(op):
    rng = random.Random(11)
    for _ in range(50):
        x = Fraction(rng.randint(1, 4000), rng.randint(1, 500))
        p = rng.choice([64, 100, 128, 200])
        r1 = ball_arith(op, Ball(x, 0, p))
        r2 = ball_arith(op, Ball(x, 0, 2 * p))
        ulp = Fraction(2) ** (gmpy2.get_exp(r1.mid) - p) if r1.mid != 0 else Fraction(0)
        assert as_fraction(r2.rad) <= as_fraction(r1.rad) + ulp
        assert r1.overlaps(r2)


# ------------------------------------------------------ Rat vs reference

def _ref_norm(n, d):
    if d < 0:
        n, d = -n, -d
    g = math.gcd(n, d)
    return n // g, d // g


def _ref(op, a, b):
    (an, ad), (bn, bd) = a, b
    if op == "+":
        return _ref_norm(an * bd + bn * ad, ad * bd)
    if op == "-":
        return _ref_norm(an * bd - bn * ad, ad * bd)
    if op == "*":
        return _ref_norm(an * bn, ad * bd)
    return _ref_norm(an * bd, ad * bn)


def test_rat_matches_big_integer_reference():
    rng = random.Random(2024)
    ops = {"+": lambda x, y: x + y, "-": lambda x, y: x - y,
           "*": lambda x, y: x * y, "/": lambda x, y: x / y}
    for _ in range(10_000):
        bits = rng.choice([8, 64, 200])
        a = (rng.randint(-2 ** bits, 2 ** bits), rng.randint(1, 2 ** bits))
        b = (rng.randint(-2 ** bits, 2 ** bits), rng.randint(1, 2 ** bits))
        op = rng.choice("+-*/")
        if op == "/" and b[0] == 0:
            continue
        got = ops[op](Rat(*a), Rat(*b))
        assert (got.numerator, got.denominator) == _ref(op, _ref_norm(*a), _ref_norm(*b))
        assert got.denominator > 0 and math.gcd(got.numerator, got.denominator) == 1
