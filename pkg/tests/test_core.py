import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from regretset import PointSet, Preference, regret_at, regret_many, score, skyline, top_k
from regretset.core import scores


def test_pointset_basics():
    P = PointSet([[1, 2], [3, 4]], ids=[10, 20])
    assert P.n == 2 and P.dims == 2
    assert P.subset([20]).points.tolist() == [[3, 4]]
    assert P.subset([20]).is_subset_of(P)
    assert not PointSet([[3, 5]], ids=[20]).is_subset_of(P)
    with pytest.raises(ValueError):
        PointSet([[-1, 0]])
    with pytest.raises(ValueError):
        PointSet([[1, 0], [0, 1]], ids=[3, 3])
    with pytest.raises(KeyError):
        P.subset([99])


def test_preference_validation():
    assert np.allclose(Preference.unit([3, 4]).direction, [0.6, 0.8])
    with pytest.raises(ValueError):
        Preference([0, 0])
    with pytest.raises(ValueError):
        Preference([1, -1])
    with pytest.raises(ValueError):
        Preference([1, 1], normalized=True)


def test_score_examples():
    assert score([1, 0, 0], [2, 3, 4]) == 2.0
    assert score([0.5, 0.5], [1, 1]) == 1.0
    assert math.isclose(score([3 * 0.2, 3 * 0.7], [5, 1]), 3 * score([0.2, 0.7], [5, 1]))


P3 = PointSet([[1, 0], [0, 1], [0.5, 0.5]])


def test_top_k_examples():
    assert top_k([1, 0], P3, 2) == [(0, 1.0), (2, 0.5)]
    assert top_k([0, 1], P3, 1) == [(1, 1.0)]


def test_top_k_ties_by_id():
    P = PointSet([[1, 0], [1, 0], [0, 1]], ids=[7, 3, 5])
    assert [r.id for r in top_k([1, 0], P, 3)] == [3, 7, 5]


def test_top_k_matches_full_sort(rng):
    P = PointSet(rng.random((50, 4)))
    for _ in range(20):
        u = rng.random(4)
        s = P.points @ u
        ref = sorted(range(50), key=lambda i: (-s[i], i))[:5]
        got = top_k(u, P, 5)
        assert [r.id for r in got] == ref
        assert top_k(u, P, 5) == got


def test_regret_examples():
    P = PointSet([[1, 0], [0, 1]])
    assert regret_at([0, 1], P.subset([0]), P, 1) == 1.0
    for k in (1, 2):
        assert regret_at([0.3, 0.9], P, P, k) == 0.0
    Q = P3.subset([2])
    for theta in np.linspace(0, math.pi / 2, 2001):
        assert regret_at([math.cos(theta), math.sin(theta)], Q, P3, 2) == pytest.approx(0.0, abs=1e-15)


def test_regret_zero_kth_score():
    P = PointSet([[1, 0], [0, 0]])
    assert regret_at([0, 1], P.subset([1]), P, 1) == 0.0


def test_regret_many_thread_independent(rng, monkeypatch):
    from regretset import core
    monkeypatch.setattr(core, "_CHUNK_ENTRIES", 64)
    P = PointSet(rng.random((30, 3)))
    Q = P.subset(range(5))
    U = rng.random((500, 3))
    a = regret_many(U, Q, P, 2, threads=1)
    b = regret_many(U, Q, P, 2, threads=4)
    assert np.array_equal(a, b)
    assert np.array_equal(a[17:18], regret_many(U[17:18], Q, P, 2))


def test_scores_fixed_order():
    rng = np.random.default_rng(0)
    U, X = rng.random((1000, 5)), rng.random((40, 5))
    S = scores(U, X)
    assert np.array_equal(S[123], scores(U[123:124], X)[0])


def test_skyline_examples(rng):
    P = PointSet([[1, 0], [0, 1], [0.4, 0.4], [0.5, 0.5]])
    assert skyline(P).ids.tolist() == [0, 1, 3]
    X = np.abs(rng.standard_normal((60, 3)))
    S = PointSet(X / np.linalg.norm(X, axis=1)[:, None])
    assert skyline(S) == S


def _brute_skyline(X):
    keep = []
    for i in range(len(X)):
        dom = any(np.all(X[j] >= X[i]) and np.any(X[j] > X[i]) for j in range(len(X)) if j != i)
        if not dom:
            keep.append(i)
    return keep


def test_skyline_matches_pairwise(rng):
    for _ in range(5):
        X = rng.random((100, 3))
        assert skyline(PointSet(X)).ids.tolist() == _brute_skyline(X)
    X = np.round(rng.random((80, 2)) * 4) / 4  # lots of ties and duplicates
    assert skyline(PointSet(X)).ids.tolist() == _brute_skyline(X)


points = st.lists(st.lists(st.floats(0, 10, allow_nan=False), min_size=3, max_size=3),
                  min_size=2, max_size=12)
direction = st.lists(st.floats(0, 1), min_size=3, max_size=3).filter(lambda v: sum(v) > 1e-3)


@settings(max_examples=200, deadline=None)
@given(points, direction, st.data())
def test_regret_properties(pts, u, data):
    P = PointSet(pts)
    k = data.draw(st.integers(1, P.n))
    ids = data.draw(st.sets(st.integers(0, P.n - 1), min_size=1))
    extra = data.draw(st.sets(st.integers(0, P.n - 1)))
    Q1, Q2 = P.subset(ids), P.subset(ids | extra)
    r = regret_at(u, Q1, P, k)
    assert 0.0 <= r <= 1.0
    # scaling by a power of two is exact in floating point
    assert regret_at(np.asarray(u) * 4.0, Q1, P, k) == r
    assert regret_at(u, Q2, P, k) <= r
    if k < P.n:
        assert regret_at(u, Q1, P, k + 1) <= r
    assert regret_at(u, P, P, k) == 0.0


@settings(max_examples=100, deadline=None)
@given(points)
def test_skyline_property(pts):
    X = np.asarray(pts)
    assert skyline(PointSet(X)).ids.tolist() == _brute_skyline(X)
