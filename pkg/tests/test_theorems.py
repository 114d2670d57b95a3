"""Randomized theorem harnesses, bound arithmetic and scans."""

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from jensenlab.numeric import Ball
from jensenlab.poly import JetTooShort, RealPoly, TaylorJet, differentiate, jensen, poly_jet
from jensenlab.roots import HalfSector, Membership, Sector, Status, all_roots, is_hyperbolic, region_contains
from jensenlab.theorems import (
    EMPIRICAL_CAVEAT,
    HypothesisViolation,
    Mode,
    TailBoundUnavailable,
    TrialConfig,
    bound_theorem1,
    bound_theorem4,
    cos_product_jet,
    random_even_strip_poly,
    random_sector_poly,
    scan_jensen_grid,
    scan_theorem2,
    theorem4_constants,
    verify_corollary,
    verify_corollary_suite,
    verify_gauss_lucas,
    verify_sector_squaring,
    verify_theorem3,
    verify_theorem4,
    xi0_jet,
)

F = Fraction
z = RealPoly((0, 1))


# ------------------------------------------------------------ configuration

def test_trial_config_validation():
    with pytest.raises(ValueError):
        TrialConfig(trials=0)
    with pytest.raises(ValueError):
        TrialConfig(seed=-1)
    with pytest.raises(ValueError):
        TrialConfig(delta=F(3, 2))
    with pytest.raises(ValueError):
        TrialConfig(deg_Q=(3, 1))
    assert TrialConfig(mode="ball").mode is Mode.BALL


def test_per_trial_streams_do_not_depend_on_order():
    cfg = TrialConfig(seed=99)
    forward = [cfg.rng(i).integers(0, 10 ** 9) for i in range(5)]
    backward = [cfg.rng(i).integers(0, 10 ** 9) for i in reversed(range(5))]
    assert forward == backward[::-1]


# ------------------------------------------------------------ sector polynomials

@pytest.mark.parametrize("delta", [F(1, 10), F(1, 2), F(1)])
def test_random_sector_poly_zeros_in_sector(delta):
    for seed in range(15):
        deg = seed % 7 + 1
        P = random_sector_poly(deg, delta, seed)
        assert P.degree == deg and P.is_exact
        rep = region_contains(all_roots(P, 128), Sector.from_delta(delta))
        assert rep.status is Membership.YES


def test_random_sector_poly_degree_one_is_real():
    P = random_sector_poly(1, F(1, 3), 5)
    assert P.degree == 1 and is_hyperbolic(P).hyperbolic


def test_sector_quadratic_with_given_root():
    # root a = 1 + 0.9i lies in S(1)
    a_re, a_im = F(1), F(9, 10)
    P = (z - a_re) * (z - a_re) + a_im * a_im
    assert region_contains(all_roots(P, 128), Sector(1)).status is Membership.YES


# ------------------------------------------------------------ Theorem 3

def test_theorem3_worked_example():
    from jensenlab.poly import compose_obreschkoff
    R = compose_obreschkoff(z * z + 2 * z + 2, z * z)
    assert R == 2 * (z + 1) ** 2
    assert is_hyperbolic(R).hyperbolic


def test_theorem3_constant_P_returns_Q():
    from jensenlab.poly import compose_obreschkoff
    Q = RealPoly.from_roots([F(-3), F(1, 2), F(7)])
    assert compose_obreschkoff(RealPoly((1,)), Q) == Q


def test_theorem3_suite_small():
    cfg = TrialConfig(seed=7, trials=150, deg_P=(0, 6), deg_Q=(1, 4), delta=F(1, 2))
    rep = verify_theorem3(cfg)
    assert rep.passed and rep.exit_code == 0 and rep.trials == 150


def test_theorem3_rejects_degree_above_bound():
    with pytest.raises(HypothesisViolation):
        verify_theorem3(TrialConfig(trials=1, deg_Q=(1, 5), delta=F(1, 2)))


def test_theorem3_is_deterministic():
    cfg = TrialConfig(seed=3, trials=30, deg_P=(0, 5), deg_Q=(1, 3), delta_sq=F(1, 3))
    assert verify_theorem3(cfg) == verify_theorem3(cfg)


def test_theorem3_detects_a_planted_failure(monkeypatch):
    """With the sector hypothesis broken the harness must find and shrink a counterexample."""
    import jensenlab.theorems as th

    def wide(deg, q, rng):
        # zeros at +-3i: far outside any sector with delta^2 = 1/4
        fs = [RealPoly((9, 0, 1))] * (deg // 2)
        return fs + [RealPoly((-1, 1))] * (deg % 2)

    monkeypatch.setattr(th, "_sector_factors", wide)
    cfg = TrialConfig(seed=1, trials=40, deg_P=(2, 6), deg_Q=(4, 4), delta=F(1, 2))
    rep = verify_theorem3(cfg)
    assert rep.counterexamples and rep.exit_code == 1
    assert "P" in rep.counterexamples[0].data


# ------------------------------------------------------------ corollary

def test_corollary_bound_is_active():
    P = z * z + F(1, 16)
    r1 = verify_corollary(P, 1)
    assert r1.identity and r1.jensen_poly == RealPoly((F(1, 16),))
    assert r1.verdict is Status.HYPERBOLIC
    r2 = verify_corollary(P, 2)
    assert r2.identity and r2.jensen_poly == 2 * z * z + F(1, 16)
    assert r2.verdict is Status.NOT_HYPERBOLIC
    assert r2.hypotheses is Membership.NO and not r2.violation


def test_corollary_boundary_example():
    r = verify_corollary(z * z + 2 * z + 2, 2)
    assert r.identity and r.verdict is Status.HYPERBOLIC
    assert r.jensen_poly == 2 * (z + 1) ** 2


@pytest.mark.parametrize("d", [0, 1, 2, 5, 9])
def test_corollary_linear_identity(d):
    assert verify_corollary(1 + z, d).identity


def test_corollary_identity_ball_mode():
    P = RealPoly((Ball(F(1, 3), 0, 128), Ball(2, 0, 128), Ball(F(-1, 7), 0, 128)))
    assert verify_corollary(P, 4, mode=Mode.BALL).identity


def test_corollary_suite_small():
    rep = verify_corollary_suite(TrialConfig(seed=4, trials=200, deg_P=(0, 8), deg_Q=(1, 10)))
    assert rep.passed and rep.checks == 400


# ------------------------------------------------------------ squaring, Gauss-Lucas

def test_sector_squaring_suite_small():
    rep = verify_sector_squaring(TrialConfig(seed=2, trials=2000))
    assert rep.passed


def test_gauss_lucas_suite_small():
    rep = verify_gauss_lucas(TrialConfig(seed=8, trials=60, deg_P=(2, 8)))
    assert rep.passed


# ------------------------------------------------------------ Theorem 4

def test_theorem4_constants_at_half():
    k = theorem4_constants(F(1, 2))
    assert k.delta_sq == F(1, 2) and k.delta_tilde_sq == 1 and k.d_max == 2
    assert k.delta_tilde() == 1
    assert (k.delta(128).sqr() * 2).contains(1)


def test_theorem4_requires_half():
    with pytest.raises(HypothesisViolation):
        theorem4_constants(F(1, 3))
    with pytest.raises(HypothesisViolation):
        bound_theorem4(F(2, 5))


def test_even_strip_poly_shape():
    f, f0 = random_even_strip_poly(F(1), 11)
    assert f == f0.compose_square()
    assert all(c == 0 for c in f.coeffs[1::2])


@pytest.mark.parametrize("T", [F(1, 2), F(1), F(5)])
def test_theorem4_suite_small(T):
    rep = verify_theorem4(TrialConfig(seed=5, trials=6, T=T))
    assert rep.passed, rep.counterexamples
    assert rep.notes["d_max"] == math.floor(1 + 4 * T * T)


def test_theorem4_hand_built_instance():
    T = F(1)
    a, b = T + 1, F(2, 5)
    s, p = a * a - b * b, 4 * a * a * b * b
    f0 = ((RealPoly((-s, 1))) ** 2 + p) * RealPoly((-4, 1))
    f = f0.compose_square()
    jet = poly_jet(f)
    for n in range(f.degree + 1):
        for d in range(1, min(5, f.degree - n) + 1):
            assert is_hyperbolic(jensen(jet, n, d)).hyperbolic


def test_real_rooted_even_polynomials_satisfy_every_step():
    rng = np.random.default_rng(17)
    for _ in range(10):
        rs = [F(int(rng.integers(1, 40)), int(rng.integers(1, 5))) for _ in range(int(rng.integers(1, 4)))]
        f0 = RealPoly.from_roots([r * r for r in rs])
        f = f0.compose_square()
        jet = poly_jet(f)
        for n in range(f.degree + 1):
            for d in range(1, f.degree - n + 1):
                assert is_hyperbolic(jensen(jet, n, d)).hyperbolic
        for k in range(f0.degree):
            rep = region_contains(all_roots(differentiate(f0, k), 128), HalfSector(1))
            assert rep.status is Membership.YES


# ------------------------------------------------------------ bounds

@pytest.mark.parametrize("c, n1, d, expected", [
    (1, 10, 4, 10),
    (2, 0, 16, 4),
    (F(11, 10), 3, 100, 6),
    (F(3, 2), 0, 4, 1),
])
def test_bound_theorem1_examples(c, n1, d, expected):
    assert bound_theorem1(c, n1, d) == expected


def test_bound_theorem1_matches_high_precision():
    for c in (F(1, 3), F(7, 5), F(19, 10)):
        for d in (5, 37, 1000, 12345):
            with mpmath.workprec(300):
                ref = int(mpmath.ceil((mpmath.mpf(d) / 4) ** (mpmath.mpf(c.numerator) / (2 * c.denominator))))
            assert bound_theorem1(c, 0, d) == ref


def test_bound_theorem1_ball_c_is_upper_bound():
    c = Ball(F(11, 10), F(1, 1000), 128)
    assert bound_theorem1(c, 0, 100) >= bound_theorem1(F(11, 10), 0, 100)


def test_bound_theorem4_published_constants():
    T = 3 * 10 ** 12
    d_xi, d_xi0 = bound_theorem4(T)
    assert d_xi == 36 * 10 ** 24 + 1
    assert d_xi0 >= 9 * 10 ** 24
    # floor(T^2 (1 + 1/(4T^2))^2) = floor(T^2 + 1/2 + 1/(16 T^2)) = T^2
    assert d_xi0 == T * T


def test_bound_theorem4_small_T():
    assert bound_theorem4(F(1, 2)) == (2, 1)
    assert bound_theorem4(Ball(5, F(1, 100), 64)) == bound_theorem4(F(499, 100))


# ------------------------------------------------------------ grid scans

def test_grid_scan_exp_all_hyperbolic():
    res = scan_jensen_grid(TaylorJet.exp(20), range(1, 11), range(0, 8))
    assert res.all_hyperbolic and res.caveat == EMPIRICAL_CAVEAT
    assert all(v == 0 for v in res.first_all_hyperbolic_n.values())


def test_grid_scan_finds_nonhyperbolic_cells():
    P = (z * z + 4) * RealPoly.from_roots([1, 2, 3])
    res = scan_jensen_grid(poly_jet(P), range(1, 5), range(0, 2))
    assert res.count(Status.NOT_HYPERBOLIC) > 0


def test_grid_scan_scale_invariance():
    P = (z * z + 1) * (z - 3) * (z + F(1, 2))
    jet = poly_jet(P, 8)
    a = scan_jensen_grid(jet, range(1, 5), range(0, 4))
    b = scan_jensen_grid(jet.scaled(F(37, 5)), range(1, 5), range(0, 4))
    assert {k: v.status for k, v in a.grid.items()} == {k: v.status for k, v in b.grid.items()}


def test_grid_scan_jet_too_short():
    with pytest.raises(JetTooShort):
        scan_jensen_grid(TaylorJet.exp(5), range(1, 4), range(0, 4))


def test_xi0_small_grid_two_precisions():
    jet_lo, jet_hi = xi0_jet(16, prec=128), xi0_jet(16, prec=192)
    lo = scan_jensen_grid(jet_lo, range(1, 9), range(0, 5), prec=128)
    hi = scan_jensen_grid(jet_hi, range(1, 9), range(0, 5), prec=192)
    assert lo.all_hyperbolic and hi.all_hyperbolic


# ------------------------------------------------------------ Theorem 2 scan

def test_cos_product_jet_against_mpmath():
    P = z * z + F(1, 16)
    jet = cos_product_jet(P, 12)
    with mpmath.workdps(40):
        ref = mpmath.taylor(lambda t: (t * t + mpmath.mpf(1) / 16) * mpmath.cos(t), 0, 12)
    for k, v in enumerate(jet.values):
        assert abs(float(v) / math.factorial(k) - float(ref[k])) < 1e-25
    assert jet.parity == "even" and jet.decay is not None


def test_theorem2_scan_cos_product():
    jet = cos_product_jet(z * z + F(1, 16), 60)
    rep = scan_theorem2(jet, F(3, 2), range(0, 9), 6, 40)
    assert rep.caveat == EMPIRICAL_CAVEAT
    assert rep.rows[0].status is Membership.YES
    assert rep.rows[0].nonreal_in_disk == 2
    assert rep.empirical_n1 is not None
    for row in rep.rows:
        if row.n >= rep.empirical_n1:
            assert row.status is Membership.YES


def test_theorem2_real_rooted_function_is_vacuous():
    rep = scan_theorem2(TaylorJet.cos(50), F(3, 2), range(0, 6), 5, 36)
    assert all(r.nonreal_in_disk == 0 and r.status is Membership.YES for r in rep.rows)
    assert rep.empirical_n1 == 0


def test_theorem2_needs_decay_bound():
    jet = TaylorJet(TaylorJet.cos(30).values, parity="even", order_hint=1)
    with pytest.raises(TailBoundUnavailable):
        scan_theorem2(jet, F(3, 2), range(0, 3), 4, 20)


def test_theorem2_c_must_exceed_order():
    with pytest.raises(ValueError):
        scan_theorem2(TaylorJet.cos(30), F(1), range(0, 3), 4, 20)
