"""Restricting to the skyline before selecting (k=1).

For k=1 a dominated point never answers a query better than its dominator,
so running on the skyline gives the same set while touching fewer points.
"""

import time

from regretset import HSConfig, PointSet, estimate_regret, gen_skypoints, rms_hs, skyline

P = gen_skypoints(3, 5000, cluster_size=9, seed=2)
S = skyline(P)
print(f"SkyPoints: {P.n} points, {S.n} on the skyline")

for use in (True, False):
    t = time.perf_counter()
    res = rms_hs(P, HSConfig(0.05, use_skyline=use))
    ms = 1000 * (time.perf_counter() - t)
    rep = estimate_regret(res.subset, P, 1, 60000, seed=0)
    print(f"use_skyline={use!s:5s}: {len(res):3d} points, sampled regret {rep.max_regret:.4f}, {ms:.0f} ms")
    print("  ids:", res.ids.tolist())
