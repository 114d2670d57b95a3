"""
Sectors, composition and Jensen polynomials
===========================================

How the composition ``P(D) Q`` interacts with sector regions, and why
Jensen polynomials of a polynomial are a reversed composition.
"""

from fractions import Fraction

from jensenlab.poly import RealPoly, compose_obreschkoff, jensen, poly_jet, reverse
from jensenlab.roots import HalfSector, Sector, all_roots, is_hyperbolic, region_contains, sector_square_member
from jensenlab.theorems import TrialConfig, verify_theorem3

z = RealPoly((0, 1))

# %%
# P = z^2 + 2z + 2 has roots -1 +- i, which sit exactly on the boundary of the
# sector with delta = 1.  Applying P(D) to Q = z^2 gives 2 (z + 1)^2.
P = z * z + 2 * z + 2
print(region_contains(all_roots(P, 128), Sector(1)).status)
R = compose_obreschkoff(P, z * z)
print("P(D) z^2 =", R, "->", is_hyperbolic(R).status)

# %%
# Squaring maps the sector into the half sector.  Two points on either side
# of the boundary for delta = 7/10 show both tests agreeing.
print(sector_square_member((Fraction(1), Fraction(97, 100)), delta=Fraction(7, 10)))
print(sector_square_member((Fraction(1), Fraction(99, 100)), delta=Fraction(7, 10)))

# %%
# A small randomized run: sector polynomials P, real-rooted Q of low degree.
rep = verify_theorem3(TrialConfig(seed=1, trials=200, deg_P=(0, 6), deg_Q=(1, 4), delta=Fraction(1, 2)))
print(rep.name, "trials", rep.trials, "counterexamples", len(rep.counterexamples))

# %%
# For a polynomial P of degree at most d, J(P; d) equals the reversal of
# P(D) z^d.  With P = z^2 + 1/16 the hypothesis fails for d = 2 and so does
# the conclusion.
P = z * z + Fraction(1, 16)
for d in (1, 2, 3):
    J = jensen(poly_jet(P, d), 0, d)
    assert J == reverse(compose_obreschkoff(P, z ** d), d)
    print(d, J, is_hyperbolic(J).status)
