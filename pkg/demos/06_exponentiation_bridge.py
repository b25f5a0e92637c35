"""
From free to classical extremes by exponentiation
=================================================

The classical limit equals t(x) exp(core(x) - 1), where core is the
continuous branch of the free law and t is a step for the Frechet family.
"""

import numpy as np

from thinning.extreme_laws import CLASSICAL, LimitLaw, classical_limit_cdf, exponentiation_bridge

x = {"gumbel": np.linspace(-2, 4, 7), "frechet": np.linspace(0.25, 4, 7), "weibull": np.linspace(-3, 0, 7)}
for fam, g in (("gumbel", None), ("frechet", 2.0), ("weibull", 1.5)):
    bridged = exponentiation_bridge(fam, g, x[fam])
    classical = classical_limit_cdf(LimitLaw(fam, CLASSICAL, g), x[fam])
    print(f"{fam:8s} max residual {np.max(np.abs(bridged - classical)):.1e}")
    for xi, b in zip(x[fam], bridged):
        print(f"   x={xi:+.3f}  F={b:.6f}")
