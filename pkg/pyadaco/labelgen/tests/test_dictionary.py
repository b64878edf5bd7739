# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np
from numpy.testing import assert_array_equal

from .. import (LabelDictionary, map_description, map_descriptions,
                labelmap_from_segments, tokenize)
from ...scene import Camera, UNLABELED, ClassVocabulary
from ...utils.json_io import json_write

from pytest import raises, fixture


@fixture(scope='module')
def kitti():
    return LabelDictionary.load('semantickitti')


@fixture(scope='module')
def nuscenes():
    return LabelDictionary.load('nuscenes')


def test_builtin(kitti, nuscenes):
    assert kitti.vocabulary.K == 19
    assert nuscenes.vocabulary.K == 16
    assert kitti.vocabulary.name(0) == 'car'
    assert nuscenes.vocabulary.name(15) == 'vegetation'


def test_tokenize():
    assert tokenize('A Semi-Trailer,  parked') == ('a', 'semi-trailer',
                                                   'parked')
    assert tokenize('') == ()


def test_map_description(kitti):
    trunk = kitti.vocabulary.index('trunk')
    assert map_description('tree trunk', kitti) == trunk
    assert map_description('spaceship', kitti) == UNLABELED
    assert map_description('Bicycle', kitti) == \
        kitti.vocabulary.index('bicycle')
    assert map_description('a BIKE leaning on a wall', kitti) == \
        kitti.vocabulary.index('bicycle')
    # whole words only
    assert map_description('carpet', kitti) == UNLABELED
    assert map_description('shipping container on a semi-trailer',
                           kitti) == kitti.vocabulary.index('other-vehicle')


def test_map_description_most_frequent(kitti):
    vocabulary = kitti.vocabulary
    text = 'a tree next to a bush and a car'
    assert map_description(text, kitti) == vocabulary.index('vegetation')
    # tie goes to the first match
    assert map_description('car near a tree', kitti) == \
        vocabulary.index('car')
    assert map_description('tree near a car', kitti) == \
        vocabulary.index('vegetation')


def test_nuscenes_trunk(nuscenes):
    assert map_description('tree trunk', nuscenes) == \
        nuscenes.vocabulary.index('vegetation')
    assert map_description('a woman walking', nuscenes) == \
        nuscenes.vocabulary.index('pedestrian')


def test_map_descriptions(kitti):
    vocabulary = kitti.vocabulary
    ranked = ['a road', 'a grassy meadow', 'lawn', 'spaceship']
    assert map_descriptions(ranked, kitti) == vocabulary.index('terrain')
    assert map_descriptions(['road', 'lawn'], kitti) == \
        vocabulary.index('road')
    assert map_descriptions(['spaceship'], kitti) == UNLABELED
    assert map_descriptions([], kitti) == UNLABELED


def test_labelmap_from_segments(kitti):
    segments = np.array([[0, 0, 1], [-1, 2, 1]])
    camera = Camera(10, 10, 1.5, 1)
    labelmap = labelmap_from_segments(
        segments, {0: 'a car', 1: ['pole', 'sign', 'pole']}, kitti, camera)
    vocabulary = kitti.vocabulary
    assert_array_equal(labelmap.labels, [
        [vocabulary.index('car'), vocabulary.index('car'),
         vocabulary.index('pole')],
        [UNLABELED, UNLABELED, vocabulary.index('pole')]])
    assert labelmap.camera is camera


def test_roundtrip_and_errors(tmpdir):
    mapping = {'ground': ['ground', 'road surface'], 'car': ['car', 'auto']}
    dictionary = LabelDictionary.from_classes(mapping)
    filename = str(tmpdir.join('dict.json'))
    json_write(filename, dictionary.to_classes())
    read = LabelDictionary.load(filename,
                                ClassVocabulary(['ground', 'car']))
    assert read.entries == dictionary.entries
    assert map_description('Road Surface', read) == 0

    with raises(ValueError):
        LabelDictionary.from_classes({'a': ['x'], 'b': ['x']})
    with raises(ValueError):
        LabelDictionary({'x': 2}, ['a', 'b'])
    with raises(ValueError):
        LabelDictionary({'!!': 0}, ['a', 'b'])
    with raises(KeyError):
        LabelDictionary.from_classes({'c': ['x']}, ClassVocabulary(['a', 'b']))
