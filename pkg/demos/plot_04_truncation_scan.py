"""
Where do nonreal zeros of derivatives go?
=========================================

For f(z) = (z^2 + 1/16) cos z the two nonreal zeros near the origin disappear
from a fixed disk under repeated differentiation.  The scan works with Taylor
truncations and says so in its output.
"""

from fractions import Fraction

from jensenlab.poly import RealPoly
from jensenlab.theorems import cos_product_jet, scan_theorem2

P = RealPoly((Fraction(1, 16), 0, 1))
jet = cos_product_jet(P, 52)
rep = scan_theorem2(jet, Fraction(3, 2), range(0, 13), 6, 40)

# %%
# One row per derivative order n.  T is the threshold n^(1/c) and the status
# says whether every nonreal truncation root in the disk lies beyond it.
print(" n   T        roots  nonreal  status")
for r in rep.rows:
    print(f"{r.n:2d}  {float(r.T.mid):7.4f}  {r.roots_in_disk:5d}  {r.nonreal_in_disk:7d}  {r.status.value}")
print("empirical n1:", rep.empirical_n1)
print(rep.caveat)
