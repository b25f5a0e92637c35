"""
Thinning: keeping the top n of m draws
======================================

The average CDF of the n largest of m exponential draws approaches the
parent law cut at its (1 - 1/k)-quantile, with k = m/n.
"""

import numpy as np

from thinning import AsymptoticThinned, Exponential, ThinSpec, binomial_tail_sum, thinned_cdf_finite
from thinning.order_stats import finite_to_asymptotic_convergence

law = Exponential()
x = np.linspace(0, 8, 9)

spec = ThinSpec(40, 10)
print("x        finite(m=40,n=10)  asymptotic(k=4)")
for xi, f, a in zip(x, thinned_cdf_finite(spec, law, x), AsymptoticThinned(law, 4).cdf(x)):
    print(f"{xi:4.1f}     {f:.6f}           {a:.6f}")

# sup-distance shrinks as m grows at fixed k
for row in finite_to_asymptotic_convergence(law, 4, [40, 400, 4000], np.linspace(0, 8, 200)):
    print(f"m={row.m:5d} n={row.n:5d}  sup |finite - asymptotic| = {row.sup_distance:.4f}")

# the binomial sum behind the limit: a step at F = alpha
m, k = 5000, 4
for F in (0.65, 0.70, 0.74, 0.75, 0.76, 0.80, 0.85):
    print(f"F={F:.2f}  S = {binomial_tail_sum(m, m // k, F):.3e}")
