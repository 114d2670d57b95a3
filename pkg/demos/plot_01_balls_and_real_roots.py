"""
Balls, Sturm counts and certified roots
=======================================

A walk through the arithmetic layer: midpoint-radius balls, exact real-root
counting, and root enclosures for a polynomial with a repeated root.
"""

from fractions import Fraction

from jensenlab.numeric import Ball, ball_arith, ball_sign
from jensenlab.poly import RealPoly
from jensenlab.roots import all_roots, is_hyperbolic, sturm_count

# %%
# A ball is a midpoint plus a radius.  Every operation returns a ball that
# contains the true result for every choice of inputs inside the arguments.
a = Ball(1, Fraction(1, 10), 128)
print("a*a   =", ball_arith("mul", a, a))
print("sqrt 2 =", Ball(2, 0, 128).sqrt())
print("sign of [0 +- 1]:", ball_sign(Ball(0, 1)))

# %%
# Exact polynomials keep Fraction coefficients.  Sturm sequences count real
# roots on an interval with no rounding at all.
z = RealPoly((0, 1))
P = (z - 1) * (z - 2) * (z - 3) ** 3 * (z * z + 1)
print("P =", P)
print("real roots in (-oo, oo):", sturm_count(P))
print("real roots in (3/2, 5/2]:", sturm_count(P, Fraction(3, 2), Fraction(5, 2)))

# %%
# The hyperbolicity check is exact for rational input; the quadratic factor
# z^2 + 1 is what makes P fail.
print(is_hyperbolic(P))
print(is_hyperbolic(P.divmod(z * z + 1)[0]))

# %%
# ``all_roots`` returns disks with multiplicities.  The triple root at 3 is
# found through the square-free factorisation, so its disk stays tiny.
rs = all_roots(P, 128)
for c, r, m in zip(rs.centers, rs.radii, rs.multiplicities):
    print(f"{complex(c):.12g}  radius {float(r):.1e}  multiplicity {m}")
