import math

import numpy as np
import pytest
from scipy import stats

from regretset import DatasetSpec, PointSet, gen_anticor, gen_skypoints, gen_sphere, load_csv, save_csv, skyline
from regretset.datasets import DatasetError, follower_leaders, format_csv, parse_csv


def test_sphere():
    P = gen_sphere(4, 100, seed=1)
    assert np.allclose(np.linalg.norm(P.points, axis=1), 1, atol=1e-12, rtol=0)
    assert skyline(P).n == 100
    one = gen_sphere(3, 1, seed=2)
    assert one.n == 1 and abs(np.linalg.norm(one.points[0]) - 1) <= 1e-12


def test_sphere_angles_uniform():
    P = gen_sphere(2, 10 ** 4, seed=0)
    angles = np.arctan2(P.points[:, 1], P.points[:, 0])
    assert stats.kstest(angles, stats.uniform(0, math.pi / 2).cdf).statistic < 0.02


def test_anticor_offset_mean():
    # the mean offset along (1,..,1)/sqrt(d) should stay near 0.5; rejecting points
    # that leave the orthant biases it upward
    P = gen_anticor(4, 10 ** 4, 0.1, seed=0)
    assert abs((P.points @ np.full(4, 0.5)).mean() - 0.5) < 0.01


def test_anticor():
    P = gen_anticor(4, 10 ** 4, 0.1, seed=0)
    assert np.all(P.points >= 0)
    offsets = P.points @ np.full(4, 0.5)
    assert abs(np.median(offsets) - 0.5) < 0.05
    tight = gen_anticor(4, 10 ** 4, 0.01, seed=0)
    assert skyline(tight).n > skyline(P).n
    with pytest.raises(DatasetError):
        gen_anticor(3, 10, sigma=0)
    with pytest.raises(DatasetError):
        gen_anticor(8, 500, sigma=5.0, seed=0, max_rejections=10)


def test_skypoints():
    P = gen_skypoints(3, 500, 4, seed=0)
    assert skyline(P).ids.tolist() == list(range(100))
    lead = follower_leaders(500, 4)
    X = P.points
    for i in range(100, 500):
        a, b = X[lead[i]], X[i]
        assert np.all(a >= b) and np.any(a > b)
    assert gen_skypoints(3, 50, 0, seed=4) == gen_sphere(3, 50, seed=4)
    with pytest.raises(DatasetError):
        gen_skypoints(3, 501, 4)


def test_reproducible():
    for spec in (DatasetSpec("sphere", d=3, n=50, seed=3), DatasetSpec("anticor", d=5, n=50, seed=3),
                 DatasetSpec("skypoints", d=4, n=50, seed=3)):
        assert format_csv(spec.build(), seed=3) == format_csv(spec.build(), seed=3)


def test_csv_rules(tmp_path):
    P = parse_csv("a,b\n1,\n2,3\n")
    assert P.points.tolist() == [[1, 3], [2, 3]]
    assert parse_csv("a,b\n-2,5\n").points.tolist() == [[2, 5]]
    path = tmp_path / "bb.csv"
    rows = "\n".join(",".join(str(v) for v in r) for r in np.random.default_rng(0).random((20, 5)))
    path.write_text("pts,reb,ast,stl,blk\n" + rows + "\n")
    assert load_csv(path).dims == 5
    assert load_csv(path, schema=["reb", "blk"]).dims == 2


def test_csv_round_trip(tmp_path):
    P = PointSet(np.random.default_rng(1).random((30, 3)), ids=np.arange(30) * 7)
    path = tmp_path / "p.csv"
    save_csv(P, path, seed=5, kind="test")
    text = path.read_text()
    assert text.startswith("# seed=5 kind=test\n")
    assert load_csv(path) == P


def test_csv_errors(tmp_path):
    with pytest.raises(DatasetError, match="missing.csv"):
        load_csv(tmp_path / "missing.csv")
    with pytest.raises(DatasetError, match="row 2"):
        parse_csv("a,b\n1,x\n")
    with pytest.raises(DatasetError):
        parse_csv("a,b\n1,2,3\n")
    with pytest.raises(DatasetError):
        parse_csv("a,b\n1,2\n", schema=["c"])


def test_spec_validation():
    with pytest.raises(DatasetError):
        DatasetSpec("bogus")
    with pytest.raises(DatasetError):
        DatasetSpec("anticor", sigma=-1)
    assert DatasetSpec("anticor", d=4, n=10).name == "anticor-s0.1-d4-n10"
