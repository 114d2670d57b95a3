"""
Certified Taylor coefficients of Xi
===================================

Two independent routes to the derivatives of Xi at the origin, and a small
Jensen grid for the function Xi_0 defined by Xi(t) = Xi_0(t^2).
"""

from jensenlab.specialfn import XiJetRequest, xi0_direct, xi_taylor
from jensenlab.theorems import scan_jensen_grid, xi0_jet

# %%
# The moment route integrates against the Phi density; the factor route
# multiplies Gamma, zeta and pi power series.  They share no code beyond the
# ball arithmetic.
phi = xi_taylor(XiJetRequest(M=12, prec=167, method="phi")).values
fac = xi_taylor(XiJetRequest(M=12, prec=167, method="factors")).values
for k in range(0, 13, 2):
    print(k, f"{float(phi[k].mid): .15e}", "overlap" if phi[k].overlaps(fac[k]) else "DISJOINT",
          f"rad {float(phi[k].rad):.1e}")

# %%
# Xi(0) from point values of Gamma(1/4) and zeta(1/2).
print("Xi(0) direct:", xi0_direct(167))

# %%
# Every Jensen polynomial in a small rectangle is certified real-rooted.
res = scan_jensen_grid(xi0_jet(16, prec=192), range(1, 9), range(0, 5), prec=192)
print("all hyperbolic:", res.all_hyperbolic)
print("caveat:", res.caveat)
