# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal

from .. import transform_points, invert_transform, is_rigid

from pytest import raises


def rotation_z(angle, translation=(0, 0, 0)):
    transform = np.eye(4)
    c, s = np.cos(angle), np.sin(angle)
    transform[:2, :2] = [[c, -s], [s, c]]
    transform[:3, 3] = translation
    return transform


def random_rigid(rng):
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    transform = np.eye(4)
    transform[:3, :3] = q
    transform[:3, 3] = rng.uniform(-10, 10, 3)
    return transform


def test_identity():
    points = np.array([[1., 2, 3], [-4, 5, 0.5]])
    assert_array_equal(transform_points(points, np.eye(4)), points)


def test_translation():
    transform = np.eye(4)
    transform[:3, 3] = (1, 2, 3)
    assert_array_equal(transform_points([[0, 0, 0]], transform), [[1, 2, 3]])


def test_rotation():
    result = transform_points([[1, 0, 0]], rotation_z(np.pi / 2))
    assert_allclose(result, [[0, 1, 0]], atol=1e-9)


def test_inverse_roundtrip(rng):
    for _ in range(20):
        transform = random_rigid(rng)
        points = rng.uniform(-50, 50, (30, 3))
        back = transform_points(transform_points(points, transform),
                                invert_transform(transform))
        assert_allclose(back, points, rtol=0, atol=1e-9)


def test_invalid():
    with raises(ValueError):
        transform_points([[np.nan, 0, 0]], np.eye(4))
    scaled = np.eye(4)
    scaled[0, 0] = 2
    assert not is_rigid(scaled)
    with raises(ValueError):
        transform_points([[0, 0, 0]], scaled)
    reflection = np.eye(4)
    reflection[2, 2] = -1
    assert not is_rigid(reflection)
    assert is_rigid(rotation_z(0.3, (1, 2, 3)))
