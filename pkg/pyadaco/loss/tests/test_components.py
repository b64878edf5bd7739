# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np
from numpy.testing import assert_allclose

from .. import (LogitsBatch, softmax_ce, nce, mae, feature_mse,
                lovasz_softmax, lovasz_grad)
from ...scene import UNLABELED
from ...utils.exceptions import EmptyBatchError, LengthMismatchError

from pytest import raises, mark


def logits_of(p):
    return np.log(np.asarray(p, dtype=np.float64))


def numeric_gradient(func, z, targets, h=1e-6):
    gradient = np.zeros_like(z)
    for index in np.ndindex(*z.shape):
        up = z.copy()
        down = z.copy()
        up[index] += h
        down[index] -= h
        gradient[index] = (func(LogitsBatch(up, targets))[0] -
                           func(LogitsBatch(down, targets))[0]) / (2 * h)
    return gradient


def random_batch(rng):
    n = rng.integers(2, 9)
    k = rng.integers(2, 6)
    z = rng.normal(0, 2, (n, k))
    targets = rng.integers(0, k, n)
    targets[rng.random(n) < 0.2] = UNLABELED
    if np.all(targets == UNLABELED):
        targets[0] = 0
    return z, targets


def assert_gradient(func, z, targets):
    analytic = func(LogitsBatch(z, targets))[1]
    numeric = numeric_gradient(func, z, targets)
    scale = max(np.abs(numeric).max(), 1e-8)
    assert np.abs(analytic - numeric).max() <= 1e-4 * scale


def test_ce_examples():
    assert_allclose(softmax_ce(LogitsBatch([[0., 0.]], [0]))[0], np.log(2))
    value = softmax_ce(LogitsBatch([[50., 0., 0.]], [0]))[0]
    assert value < 1e-20


def test_nce_examples():
    value = nce(LogitsBatch(logits_of([[0.7, 0.3]]), [0]))[0]
    assert_allclose(value, 0.22854, atol=1e-5)
    for k in (2, 3, 7):
        uniform = LogitsBatch(np.zeros((3, k)), [0, 1, 1])
        assert_allclose(nce(uniform)[0], 1. / k)


def test_nce_shift_invariant(rng):
    z = rng.normal(size=(6, 4))
    targets = rng.integers(0, 4, 6)
    shifted = z + rng.normal(size=(6, 1)) * 10
    assert_allclose(nce(LogitsBatch(z, targets))[0],
                    nce(LogitsBatch(shifted, targets))[0])


def test_mae_examples():
    assert_allclose(mae(LogitsBatch(logits_of([[0.7, 0.3]]), [0]))[0], 0.6)
    assert mae(LogitsBatch([[60., 0.]], [0]))[0] < 1e-20
    assert_allclose(mae(LogitsBatch([[0., 60.]], [0]))[0], 2)


def test_feature_mse():
    features = np.arange(8.).reshape(4, 2)
    assert feature_mse(features, features)[0] == 0
    value, gradient = feature_mse(np.zeros((2, 2)), np.ones((2, 2)))
    assert value == 1.
    assert_allclose(gradient, 0.5)
    with raises(LengthMismatchError):
        feature_mse(np.zeros((2, 2)), np.zeros((2, 3)))


def test_feature_mse_gradient(rng):
    target = rng.normal(size=(3, 4))
    aligned = rng.normal(size=(3, 4))
    gradient = feature_mse(target, aligned)[1]
    h = 1e-6
    for index in np.ndindex(*aligned.shape):
        up = aligned.copy()
        down = aligned.copy()
        up[index] += h
        down[index] -= h
        numeric = (feature_mse(target, up)[0] -
                   feature_mse(target, down)[0]) / (2 * h)
        assert_allclose(gradient[index], numeric, rtol=1e-4, atol=1e-9)


def test_lovasz_examples():
    perfect = LogitsBatch([[80., 0.], [0., 80.]], [0, 1])
    assert lovasz_softmax(perfect)[0] < 1e-12
    single = LogitsBatch(logits_of([[0.6, 0.4]]), [0])
    assert_allclose(lovasz_softmax(single)[0], 0.4)
    # errors (0.4, 0.2) get the Jaccard weights (0.5, 0.5)
    pair = LogitsBatch(logits_of([[0.6, 0.4], [0.8, 0.2]]), [0, 0])
    assert_allclose(lovasz_softmax(pair)[0], 0.3)
    assert_allclose(lovasz_grad([1, 1]), [0.5, 0.5])


def test_lovasz_grad_sums_to_jaccard():
    gt = np.array([1, 0, 1, 1, 0, 0])
    assert_allclose(lovasz_grad(gt).sum(), 1.)


def test_bounds(rng):
    for _ in range(50):
        z, targets = random_batch(rng)
        batch = LogitsBatch(z, targets)
        assert 0 <= nce(batch)[0] <= 1
        assert 0 <= mae(batch)[0] <= 2
        assert softmax_ce(batch)[0] >= 0
        assert lovasz_softmax(batch)[0] >= 0


@mark.parametrize('func', [softmax_ce, nce, mae])
def test_gradients(rng, func):
    for _ in range(100):
        z, targets = random_batch(rng)
        assert_gradient(func, z, targets)


def test_lovasz_gradient(rng):
    for _ in range(100):
        z, targets = random_batch(rng)
        assert_gradient(lovasz_softmax, z, targets)


def test_ignored_points(rng):
    z = rng.normal(size=(5, 3))
    targets = np.array([0, UNLABELED, 2, UNLABELED, 1])
    kept = LogitsBatch(z[[0, 2, 4]], targets[[0, 2, 4]])
    full = LogitsBatch(z, targets)
    for func in (softmax_ce, nce, mae, lovasz_softmax):
        value, gradient = func(full)
        assert_allclose(value, func(kept)[0])
        assert np.all(gradient[[1, 3]] == 0)


def test_empty_batch():
    batch = LogitsBatch(np.zeros((2, 3)), [UNLABELED, UNLABELED])
    for func in (softmax_ce, nce, mae, lovasz_softmax):
        with raises(EmptyBatchError):
            func(batch)


def test_batch_checks():
    with raises(LengthMismatchError):
        LogitsBatch(np.zeros((2, 3)), [0])
    with raises(ValueError):
        LogitsBatch(np.zeros((2, 3)), [0, 3])
    with raises(ValueError):
        LogitsBatch([[np.nan, 0.]], [0])
    with raises(ValueError):
        LogitsBatch(np.zeros((2, 3)), [0, 1], features_2d=np.zeros((2, 2)))
