"""
Parent laws: densities, distribution functions and tail quantiles
=================================================================

Seven laws, from the semicircle of GUE spectra to the exponential.
"""

import numpy as np

from thinning import standard_laws

for law in standard_laws():
    lo, hi = law.support
    # the median and the 1-in-1000 upper quantile, plus its large-k approximation
    med = law.quantile(0.5)
    top = law.isf(1e-3)
    approx = law.quantile_asymptotic(1000)
    print(f"{law.name:17s} support [{lo:g}, {hi:g}]  {law.domain:8s} gamma={law.gamma}")
    print(f"{'':17s} median {med:+.6f}   x(1-1/1000) {top:.6f}   leading order {approx:.6f}")

# cdf and sf are computed separately, so far tails keep their digits
law = standard_laws()[0]
x = np.array([1.9, 1.99, 1.999999])
print("\nsemicircle sf near the edge:", law.sf(x))
print("1 - cdf (cancels):           ", 1 - law.cdf(x))
