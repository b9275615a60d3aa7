"""Small representative subsets (k-regret minimizing sets) of multi-attribute data."""

from .core import (PointSet, Preference, Ranked, regret_at, regret_many, score, scores,
                   skyline, top_k)
from .coreset import RRSConfig, SelectionResult, directional_width, is_eps_kernel, rrs
from .datasets import (DatasetError, DatasetSpec, gen_anticor, gen_skypoints, gen_sphere,
                       load_csv, save_csv)
from .evaluate import RegretReport, estimate_regret, regret_distribution, sample_directions
from .exact import exact_regret, exact_regret_2d, exact_regret_3d, grid_oracle
from .greedy import GreedyConfig, greedy_regret_set
from .hitting_set import (HSConfig, RangeSystem, ScaleTransform, apply_scale, basis, build_net,
                          build_ranges, greedy_hitting_set, min_error, rms_hs)

__version__ = "0.1.0"

__all__ = [
    "PointSet", "Preference", "Ranked", "score", "scores", "top_k", "regret_at", "regret_many",
    "skyline", "exact_regret", "exact_regret_2d", "exact_regret_3d", "grid_oracle",
    "RegretReport", "sample_directions", "estimate_regret", "regret_distribution",
    "RRSConfig", "SelectionResult", "directional_width", "is_eps_kernel", "rrs",
    "HSConfig", "RangeSystem", "ScaleTransform", "basis", "apply_scale", "build_net",
    "build_ranges", "greedy_hitting_set", "rms_hs", "min_error",
    "GreedyConfig", "greedy_regret_set",
    "DatasetSpec", "DatasetError", "gen_sphere", "gen_anticor", "gen_skypoints", "load_csv",
    "save_csv",
]
