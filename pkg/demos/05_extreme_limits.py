"""
Free extreme laws and their domains of attraction
=================================================

Rescaled thinned CDFs settle onto the free Gumbel, Frechet or Weibull law
as k grows; the free laws are generalized Pareto distributions.
"""

import numpy as np

from thinning import gpd_identify, limit_convergence_report, scaling_constants, standard_laws
from thinning.extreme_laws import ASYMPTOTIC, FREE, LimitLaw

for law in standard_laws():
    ks = [1e3, 1e5, 1e7] if law.name == "gaussian" else [1e2, 1e3, 1e4]
    rep = limit_convergence_report(law, ks)
    c = scaling_constants(law, ks[-1])
    print(f"{law.name:17s} -> free {law.domain:8s}  sup distances "
          + "  ".join(f"{d:.1e}" for _, d in rep) + f"   a={c.a:.4g} b={c.b:.4g}")

# exact vs asymptotic constants for the Gaussian, where convergence is slow
for k in (1e3, 1e6, 1e9):
    ex, se = scaling_constants(standard_laws()[5], k), scaling_constants(standard_laws()[5], k, ASYMPTOTIC)
    print(f"gaussian k={k:.0e}: a exact {ex.a:.5f} series {se.a:.5f}; b exact {ex.b:.5f} series {se.b:.5f}")

# each free law is a generalized Pareto law after an affine map
grids = {"gumbel": [0.5, 1, 2, 4], "frechet": [1.5, 2, 4, 8], "weibull": [-0.9, -0.6, -0.3, 0]}
for fam, g in (("gumbel", None), ("frechet", 1.0), ("weibull", 1.5)):
    gp = gpd_identify(fam, g)
    print(f"{fam:8s} {gp}")
    print("   GPD     ", np.round(gp.cdf(grids[fam]), 6))
    print("   free law", np.round(LimitLaw(fam, FREE, g).cdf(grids[fam]), 6))
