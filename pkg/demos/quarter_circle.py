"""Regret on the quarter circle: exact sweep, the coreset heuristic and the hitting-set algorithm.

Every point of a quarter circle is on the skyline, so no small subset has
zero regret.  This walks through how the regret of a subset is measured and
how the two selection algorithms trade size for regret.
"""

import math

import numpy as np

from regretset import HSConfig, PointSet, RRSConfig, exact_regret_2d, estimate_regret, rms_hs, rrs

m = 64
theta = np.linspace(0, math.pi / 2, m)
P = PointSet(np.column_stack([np.cos(theta), np.sin(theta)]).clip(0))

# Keep every 9th point (both ends included).  The worst preference points
# near the middle of a gap; the bound 1 - cos(gap/2) is not quite reached
# because the midpoint falls between two points of P.
Q = P.subset(range(0, m, 9))
value, witness = exact_regret_2d(Q, P, 1)
gap = theta[9] - theta[0]
print(f"every 9th point: {Q.n} points, exact regret {value:.5f}")
print(f"  witness angle {math.degrees(math.atan2(*witness.direction[::-1])):.2f} deg")
print(f"  bound 1 - cos(gap/2) = {1 - math.cos(gap / 2):.5f}")

# The sampled estimate is a lower bound on the exact value
rep = estimate_regret(Q, P, 1, count=20000, seed=0)
print(f"  sampled estimate {rep.max_regret:.5f}, 90% quantile {rep.quantiles[0.9]:.5f}")

print("\n  eps   RRS size  RRS regret   HS size  HS regret")
for eps in (0.08, 0.04, 0.02, 0.01, 0.005):
    a = rrs(P, RRSConfig(eps, seed=1))
    b = rms_hs(P, HSConfig(eps))
    print(f"{eps:6.3f} {len(a):9d} {exact_regret_2d(a.subset, P, 1)[0]:11.5f}"
          f" {len(b):9d} {exact_regret_2d(b.subset, P, 1)[0]:10.5f}")

# Halving eps should grow the output by about sqrt(2): size ~ 1/sqrt(eps)
sizes = [np.mean([len(rrs(P, RRSConfig(e, seed=s))) for s in range(5)]) for e in (0.04, 0.01)]
print(f"\nRRS mean size at eps=0.04: {sizes[0]:.1f}, at eps=0.01: {sizes[1]:.1f}"
      f" (ratio {sizes[1] / sizes[0]:.2f}, 1/sqrt(eps) predicts 2)")
