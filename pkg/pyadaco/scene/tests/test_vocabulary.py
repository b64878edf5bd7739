# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np
from numpy.testing import assert_array_equal

from .. import ClassVocabulary, UNLABELED, check_labels
from ...utils.exceptions import LabelRangeError

from pytest import raises


def test_vocabulary():
    vocabulary = ClassVocabulary(['ground', 'car', 'pole'])
    assert vocabulary.K == 3
    assert len(vocabulary) == 3
    assert vocabulary.unlabeled_id == UNLABELED == 65535
    assert vocabulary.index('car') == 1
    assert vocabulary.name(2) == 'pole'
    assert vocabulary.name(UNLABELED) == 'unlabeled'
    assert list(vocabulary) == ['ground', 'car', 'pole']
    assert vocabulary == ClassVocabulary(('ground', 'car', 'pole'))
    assert vocabulary != ClassVocabulary(('car', 'ground', 'pole'))
    with raises(KeyError):
        vocabulary.index('tree')
    with raises(AttributeError):
        vocabulary.K = 4


def test_vocabulary_invalid():
    with raises(ValueError):
        ClassVocabulary(['ground'])
    with raises(ValueError):
        ClassVocabulary(['ground', 'car', 'ground'])


def test_check_labels():
    labels = check_labels(np.array([0, 1, 2, UNLABELED], dtype=np.uint16), 3)
    assert labels.dtype == np.int64
    assert_array_equal(labels, [0, 1, 2, UNLABELED])

    with raises(LabelRangeError):
        check_labels([0, 3], 3)
    with raises(LabelRangeError):
        check_labels([-1, 0], 3)
    with raises(LabelRangeError):
        check_labels([0.5], 3)
    assert check_labels([], 3).shape == (0,)
