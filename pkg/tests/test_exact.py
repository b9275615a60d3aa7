import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from regretset import PointSet, exact_regret, exact_regret_2d, exact_regret_3d, grid_oracle, regret_at
from regretset.core import top_k
from regretset.exact import event_angles, grid_directions

from conftest import quarter_circle, random_instance


def test_2d_axis_example():
    P = PointSet([[1, 0], [0, 1]])
    value, w = exact_regret_2d(P.subset([0]), P, 1)
    assert value == 1.0
    assert np.allclose(w.direction, [0, 1])


def test_2d_quarter_circle_example():
    P = quarter_circle(5)
    Q = P.subset([0, 2, 4])
    value, w = exact_regret_2d(Q, P, 1)
    assert value == pytest.approx(1 - math.cos(math.radians(22.5)), abs=1e-12)
    angle = math.degrees(math.atan2(w.direction[1], w.direction[0]))
    assert min(abs(angle - 22.5), abs(angle - 67.5)) < 1e-9
    assert grid_oracle(Q, P, 1, 10 ** 5)[0] == pytest.approx(value, abs=1e-6)


def test_2d_median_example():
    P = PointSet([[1, 0], [0, 1], [0.5, 0.5]])
    assert exact_regret_2d(P.subset([2]), P, 2)[0] == pytest.approx(0.0, abs=1e-15)


def test_event_angles_are_swaps(rng):
    P = PointSet(rng.random((10, 2)))
    ev = event_angles(P)
    assert np.all(np.diff(ev) > 0) and ev[0] == 0 and ev[-1] == math.pi / 2
    for t in ev[1:-1]:
        u = np.array([math.cos(t), math.sin(t)])
        s = P.points @ u
        # some pair of distinct points has equal score at the event
        gaps = np.abs(s[:, None] - s[None, :])[np.triu_indices(P.n, 1)]
        assert gaps.min() < 1e-12


def test_3d_examples():
    P = PointSet(np.random.default_rng(3).random((7, 3)))
    assert exact_regret_3d(P, P, 1)[0] == 0.0
    P = PointSet(np.vstack([np.eye(3), np.full(3, 1 / math.sqrt(3))]))
    value, w = exact_regret_3d(P.subset([0, 1, 2]), P, 1)
    assert value == pytest.approx(1 - 1 / math.sqrt(3), abs=1e-12)
    assert np.allclose(w.direction, 1 / math.sqrt(3))


def test_3d_random_matches_grid():
    rng = np.random.default_rng(7)
    Q, P = random_instance(rng, 3, 12, q=4)
    exact = exact_regret_3d(Q, P, 2)[0]
    grid = grid_oracle(Q, P, 2, 10 ** 6)[0]
    assert grid <= exact + 1e-12
    assert exact - grid < 1e-3


def test_3d_size_cap():
    P = PointSet(np.random.default_rng(0).random((41, 3)))
    with pytest.raises(ValueError, match="grid_oracle"):
        exact_regret_3d(P, P, 1)
    with pytest.raises(ValueError):
        exact_regret(PointSet(np.ones((3, 4))), PointSet(np.ones((3, 4))), 1)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_grid_nested(d):
    small, big = grid_directions(d, 50), grid_directions(d, 400)
    assert len(small) >= 50 and len(big) >= 400
    assert np.all(small >= 0) and np.allclose(np.linalg.norm(big, axis=1), 1)
    big_set = {tuple(np.round(v, 12)) for v in big}
    assert all(tuple(np.round(v, 12)) in big_set for v in small)


def test_grid_oracle_monotone(rng):
    for d in (2, 3, 4):
        Q, P = random_instance(rng, d, 15, q=3)
        values = [grid_oracle(Q, P, 1, r)[0] for r in (10, 100, 1000, 10000)]
        assert all(a <= b + 1e-12 for a, b in zip(values, values[1:]))
        assert grid_oracle(P, P, 1, 1000)[0] == 0.0


def test_exact_upper_bounds_grid_and_witness(rng):
    for _ in range(30):
        n = int(rng.integers(2, 25))
        Q, P = random_instance(rng, 2, n)
        k = int(rng.integers(1, n + 1))
        value, w = exact_regret_2d(Q, P, k)
        assert grid_oracle(Q, P, k, 2000)[0] <= value + 1e-12
        assert regret_at(w, Q, P, k) == value


def test_adding_witness_top_point_decreases(rng):
    for d, n in ((2, 20), (3, 9)):
        for _ in range(15):
            Q, P = random_instance(rng, d, n, q=3)
            value, w = exact_regret(Q, P, 1)
            if value == 0:
                continue
            best = top_k(w, P, 1)[0].id
            Q2 = P.subset(list(Q.ids) + [best])
            assert exact_regret(Q2, P, 1)[0] < value


def test_permutation_invariance(rng):
    for d, n in ((2, 25), (3, 10)):
        Q, P = random_instance(rng, d, n, q=4)
        perm = rng.permutation(n)
        P2 = P.take(perm)
        Q2 = Q.take(rng.permutation(Q.n))
        assert exact_regret(Q2, P2, 2)[0] == exact_regret(Q, P, 2)[0]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=2, max_size=10),
       st.data())
def test_exact_2d_degenerate_inputs(pts, data):
    # small integer grids give many parallel pairs, duplicates and ties
    P = PointSet(np.asarray(pts, dtype=float) + 0.5)
    k = data.draw(st.integers(1, P.n))
    ids = data.draw(st.sets(st.integers(0, P.n - 1), min_size=1))
    Q = P.subset(ids)
    value, w = exact_regret_2d(Q, P, k)
    assert 0 <= value <= 1
    assert grid_oracle(Q, P, k, 4000)[0] <= value + 1e-12
