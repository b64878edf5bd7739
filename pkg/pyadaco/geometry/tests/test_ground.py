# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal

from .. import GroundModel, fit_ground
from ...utils.exceptions import GroundFitError

from pytest import raises


def test_plane_with_outliers(rng):
    plane = np.column_stack([rng.uniform(-20, 20, (1000, 2)),
                             np.zeros(1000)])
    above = np.column_stack([rng.uniform(-5, 5, (50, 2)), np.full(50, 5.)])
    points = np.concatenate([plane, above])
    model, inliers = fit_ground(points, iterations=200, tol=0.2, seed=0)
    assert_allclose(model.normal, [0, 0, 1], atol=1e-9)
    assert_allclose(model.offset, 0, atol=1e-9)
    assert inliers.sum() == 1000
    assert not inliers[1000:].any()
    assert_allclose(model.height(above), 5.)


def test_coplanar_points_are_all_inliers(rng):
    xy = rng.uniform(-3, 3, (200, 2))
    points = np.column_stack([xy, 0.1 * xy[:, 0] - 0.2 * xy[:, 1] + 1.])
    model, inliers = fit_ground(points, iterations=20, tol=0.01)
    assert inliers.all()
    assert model.normal[2] > 0


def test_deterministic(rng):
    points = rng.normal(size=(300, 3))
    first, mask = fit_ground(points, seed=3)
    second, mask2 = fit_ground(points, seed=3)
    assert_array_equal(first.normal, second.normal)
    assert_array_equal(mask, mask2)


def test_too_few_points():
    with raises(ValueError):
        fit_ground(np.zeros((2, 3)))


def test_degenerate():
    points = np.column_stack([np.arange(10.), np.zeros(10), np.zeros(10)])
    with raises(GroundFitError):
        fit_ground(points, iterations=30)


def test_bad_arguments():
    with raises(ValueError):
        fit_ground(np.eye(3), iterations=0)
    with raises(ValueError):
        fit_ground(np.eye(3), tol=0)


def test_model_normal_checked():
    with raises(ValueError):
        GroundModel([0, 0, 2], 0, 0.2)
    model = GroundModel([0, 0, 1], -1., 0.2)
    assert_array_equal(model.inliers([[0, 0, 1.1], [0, 0, 1.5]]),
                       [True, False])


def angle_to(normal, truth):
    return np.arccos(min(1., abs(np.dot(normal, truth))))


def test_refit_improves_noisy_plane(rng):
    truth = np.array([0.1, -0.05, 1.])
    truth /= np.linalg.norm(truth)
    xy = rng.uniform(-20, 20, (2000, 2))
    z = -(truth[0] * xy[:, 0] + truth[1] * xy[:, 1]) / truth[2]
    points = np.column_stack([xy, z + rng.normal(0, 0.05, 2000)])
    ransac, _ = fit_ground(points, iterations=50, tol=0.2, refit=False)
    refitted, inliers = fit_ground(points, iterations=50, tol=0.2)
    assert angle_to(refitted.normal, truth) < angle_to(ransac.normal, truth)
    assert angle_to(refitted.normal, truth) < 1e-2
    assert inliers.sum() > 1900
