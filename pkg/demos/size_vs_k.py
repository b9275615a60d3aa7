"""How the size of a regret set shrinks as k grows.

Being compared against the k-th best point instead of the best makes the
target easier, so fewer points are needed.  Uses an anti-correlated data set
where almost every point is on the skyline.
"""

import numpy as np

from regretset import HSConfig, estimate_regret, gen_anticor, rms_hs, skyline

P = gen_anticor(5, 2000, sigma=0.1, seed=3)
print(f"AntiCor d=5: {P.n} points, {skyline(P).n} on the skyline")

eps = 0.05
print(f"\n k   size   sampled regret (eps={eps})")
for k in (1, 2, 5, 10, 20):
    res = rms_hs(P, HSConfig(eps, k=k, net_mode="auto", seed=0, eval_count=20000))
    rep = estimate_regret(res.subset, P, k, 60000, seed=99)
    print(f"{k:2d} {len(res):6d}   {rep.max_regret:.4f}")

# A set built for k=1 is automatically good for every larger k
res = rms_hs(P, HSConfig(eps, k=1, net_mode="auto", eval_count=20000))
worst = [estimate_regret(res.subset, P, k, 20000, seed=1).max_regret for k in (1, 5, 20)]
print("\nk=1 set evaluated at k=1,5,20:", np.round(worst, 4))
