"""
Peaks over threshold
====================

The excess law above u is the thinned law at k(u) = 1 / (1 - F(u)).
"""

import numpy as np

from thinning import Gaussian, Semicircle, excess_cdf, k_from_threshold, threshold_from_k
from thinning.pot import pot_thinning_identity_check

for law in (Semicircle(), Gaussian()):
    for k in (10, 100, 1000):
        u = threshold_from_k(law, k)
        t = np.linspace(0, 1, 200)
        gap = pot_thinning_identity_check(law, u, t)
        print(f"{law.name:10s} k={k:5d} u={u:.5f}  k(u)={k_from_threshold(law, u):9.3f}  gap {gap:.1e}")

# excess distribution of the Gaussian above its 0.999 quantile
law = Gaussian()
u = law.quantile(0.999)
print(excess_cdf(law, u, [0.0, 0.1, 0.3, 1.0]))
