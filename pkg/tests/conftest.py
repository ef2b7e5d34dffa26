import numpy as np
import pytest

from qheis.heisenberg import HeisPoint, point_to_array
from qheis.quaternion import Quaternion


def make_point(zw=0.0, zx=0.0, zy=0.0, zz=0.0, vx=0.0, vy=0.0, vz=0.0):
    return HeisPoint(Quaternion(zw, zx, zy, zz), Quaternion(0.0, vx, vy, vz))


def random_quaternion(rng, scale=2.0):
    return Quaternion(*rng.uniform(-scale, scale, 4))


def random_unit_quaternion(rng):
    vec = rng.normal(size=4)
    return Quaternion(*(vec / np.linalg.norm(vec)))


def random_point(rng, scale=2.0):
    return HeisPoint(random_quaternion(rng, scale),
                     Quaternion(0.0, *rng.uniform(-scale, scale, 3)))


def points_close(a, b, tol=1e-10):
    """Componentwise comparison; the Cygan metric's fourth root makes it the
    wrong yardstick for near-equality."""
    return float(np.abs(point_to_array(a) - point_to_array(b)).max()) <= tol


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
