import numpy as np
import pytest

from regretset import (GreedyConfig, HSConfig, PointSet, exact_regret_2d, gen_anticor,
                       greedy_regret_set, rms_hs, skyline)
from regretset.greedy import LABEL


def test_full_size_gives_zero(rng):
    P = PointSet(rng.random((25, 3)))
    res = greedy_regret_set(P, GreedyConfig(target_size=P.n, use_skyline=False, direction_count=3000))
    assert res.regret_estimate == 0.0


def test_three_point_example():
    P = PointSet([[1, 0], [0, 1], [0.7, 0.7]])
    hist = []
    res = greedy_regret_set(P, GreedyConfig(target_size=2), history=hist)
    assert res.ids.tolist() == [0, 1]
    assert hist[0] == pytest.approx(1.0, abs=1e-3)
    assert res.regret_estimate == pytest.approx(exact_regret_2d(res.subset, P, 1)[0], abs=1e-3)
    assert res.regret_estimate <= exact_regret_2d(res.subset, P, 1)[0]


def test_against_hs_size():
    P = gen_anticor(3, 300, 0.1, seed=0)
    g = greedy_regret_set(P, GreedyConfig(k=10, target_epsilon=0.05))
    h = rms_hs(P, HSConfig(0.025, k=10))
    assert g.certified
    assert len(h) / 3 <= len(g) <= 3 * len(h)


def test_history_and_subset(rng):
    P = PointSet(rng.random((300, 4)))
    hist = []
    res = greedy_regret_set(P, GreedyConfig(target_epsilon=0.02, direction_count=5000), history=hist)
    assert hist == sorted(hist, reverse=True)
    assert res.subset.is_subset_of(skyline(P))
    res = greedy_regret_set(P, GreedyConfig(k=3, target_size=10, direction_count=5000))
    assert res.subset.is_subset_of(P) and len(res) <= 10
    assert len(res) == 10 or res.regret_estimate == 0.0


def test_config_validation():
    with pytest.raises(ValueError):
        GreedyConfig()
    with pytest.raises(ValueError):
        GreedyConfig(target_size=3, target_epsilon=0.1)
    assert "sampled" in LABEL
