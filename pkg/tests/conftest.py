import math

import numpy as np
import pytest

from regretset import PointSet


def quarter_circle(m, copies=1):
    """m evenly spaced points on the unit quarter circle, repeated ``copies`` times."""
    theta = np.linspace(0.0, math.pi / 2, m)
    pts = np.column_stack([np.cos(theta), np.sin(theta)])
    pts[pts < 1e-15] = 0.0
    return PointSet(np.tile(pts, (copies, 1)))


def random_instance(rng, d, n, q=None):
    P = PointSet(rng.random((n, d)))
    size = q if q is not None else int(rng.integers(1, n + 1))
    Q = P.subset(rng.choice(n, size=size, replace=False))
    return Q, P


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
