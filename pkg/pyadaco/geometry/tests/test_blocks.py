# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np
from numpy.testing import assert_array_equal

from .. import partition_blocks

from pytest import raises


def test_four_blocks(rng):
    points = np.column_stack([rng.uniform(0, 20, (500, 2)),
                              rng.uniform(-1, 5, 500)])
    points[:4, :2] = [[0, 0], [20, 20], [0, 20], [20, 0]]
    subsets = partition_blocks(points, 10, 10)
    assert len(subsets) == 4


def test_single_block(rng):
    points = rng.uniform(0, 3, (50, 3))
    subsets = partition_blocks(points, block=10.)
    assert len(subsets) == 1
    assert_array_equal(subsets[0], np.arange(50))


def test_partition_when_stride_is_block(rng):
    points = rng.uniform(-33, 41, (2000, 3))
    subsets = partition_blocks(points, 10)
    joined = np.concatenate(subsets)
    assert joined.size == 2000
    assert_array_equal(np.sort(joined), np.arange(2000))


def test_overlapping_blocks_cover(rng):
    points = rng.uniform(0, 25, (1000, 3))
    subsets = partition_blocks(points, block=10., stride=5.)
    joined = np.concatenate(subsets)
    assert joined.size > 1000
    assert_array_equal(np.unique(joined), np.arange(1000))


def test_block_extent(rng):
    points = rng.uniform(0, 30, (1000, 3))
    for subset in partition_blocks(points, 10, 10):
        extent = np.ptp(points[subset, :2], axis=0)
        assert np.all(extent <= 10)


def test_empty_and_invalid():
    assert partition_blocks(np.zeros((0, 3))) == []
    with raises(ValueError):
        partition_blocks(np.zeros((3, 3)), block=0)
    with raises(ValueError):
        partition_blocks(np.zeros((3, 3)), stride=-1)
