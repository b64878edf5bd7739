# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal

from .. import ConfusionMatrix, confusion, miou, macc, label_quality
from ...scene import UNLABELED
from ...utils.exceptions import LengthMismatchError, MetricUndefinedError

from pytest import raises


def test_hand_example():
    cm = confusion([0, 0, 1], [0, 1, 1], 2)
    assert_array_equal(cm.counts, [[1, 1], [0, 1]])
    value, iou = miou(cm)
    assert_allclose(iou, [0.5, 0.5])
    assert value == 0.5
    assert macc(cm) == 0.75


def test_identical_is_diagonal(rng):
    gt = rng.integers(0, 6, 500)
    cm = confusion(gt, gt, 6)
    assert_array_equal(cm.counts, np.diag(np.bincount(gt, minlength=6)))
    assert miou(cm)[0] == 1.
    assert macc(cm) == 1.


def test_unlabeled_ignored():
    cm = confusion([UNLABELED] * 4, [0, 1, 2, 0], 3)
    assert cm.total == 0
    assert cm.ignored == 4
    with raises(MetricUndefinedError):
        miou(cm)
    with raises(MetricUndefinedError):
        macc(cm)


def test_absent_class_excluded():
    cm = confusion([0, 0, 1, 1], [0, 0, 1, 0], 3)
    value, iou = miou(cm)
    assert np.isnan(iou[2])
    assert_allclose(value, (2. / 3 + 1. / 2) / 2)


def test_single_class():
    cm = confusion([1, 1, 1, 1], [1, 1, 0, 1], 2)
    assert macc(cm) == 0.75


def test_against_brute_force(rng):
    for _ in range(50):
        k = int(rng.integers(2, 7))
        counts = rng.integers(0, 20, (k, k))
        counts[rng.integers(0, k)] = 0
        cm = ConfusionMatrix(counts)
        ious, recalls = [], []
        for c in range(k):
            tp = counts[c, c]
            fp = sum(counts[g, c] for g in range(k) if g != c)
            fn = sum(counts[c, p] for p in range(k) if p != c)
            if tp + fp + fn:
                ious.append(tp / float(tp + fp + fn))
            if counts[c].sum():
                recalls.append(tp / float(counts[c].sum()))
        assert_allclose(miou(cm)[0], np.mean(ious))
        assert_allclose(macc(cm), np.mean(recalls))
        assert 0 <= miou(cm)[0] <= 1 and 0 <= macc(cm) <= 1


def test_add():
    first = confusion([0, 1], [0, 1], 2)
    second = confusion([0, UNLABELED], [1, 0], 2)
    total = first + second
    assert_array_equal(total.counts, [[1, 1], [0, 1]])
    assert total.ignored == 1
    with raises(ValueError):
        first + confusion([0], [0], 3)


def test_invalid():
    with raises(LengthMismatchError):
        confusion([0, 1], [0], 2)
    with raises(ValueError):
        confusion([0, 2], [0, 1], 2)
    with raises(ValueError):
        ConfusionMatrix([[1, -1], [0, 0]])
    with raises(ValueError):
        ConfusionMatrix([[1, 0, 0]])


def test_label_quality():
    clean = [0, 0, 1, 1]
    quality = label_quality(clean, [0, UNLABELED, 1, 0], 2)
    assert quality['accuracy'] == 0.5
    assert quality['unlabeled'] == 0.25
    # class 0: TP 1, FP 1, FN 1; class 1: TP 1, FN 1
    assert_allclose(quality['miou'], (1. / 3 + 1. / 2) / 2)
    perfect = label_quality(clean, clean, 2)
    assert perfect == {'accuracy': 1., 'miou': 1., 'unlabeled': 0.}
    with raises(MetricUndefinedError):
        label_quality([UNLABELED], [0], 2)
