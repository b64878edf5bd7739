# Licensed under a 3-clause BSD style license - see LICENSE.rst

import os

import numpy as np
from numpy.testing import assert_array_equal

from .. import (SampleScene, ClassVocabulary, Camera, LabelMap2D, UNLABELED,
                read_scene, write_scene, list_scenes, read_labelmap,
                write_labelmap)
from ...utils.exceptions import (SceneFormatError, LengthMismatchError,
                                 LabelRangeError)
from ...utils.json_io import json_read, json_write

from pytest import raises

CLASSES = ClassVocabulary(['ground', 'car', 'pole'])


def random_scene(rng, n, with_clean=True, n_features=0):
    points = rng.uniform(-20, 20, (n, 3)).astype(np.float32)
    noisy = rng.integers(0, 3, n)
    noisy[rng.random(n) < 0.1] = UNLABELED
    clean = rng.integers(0, 3, n) if with_clean else None
    features = (rng.normal(size=(n, n_features)).astype(np.float32)
                if n_features else None)
    angle = rng.uniform(0, 2 * np.pi)
    pose = np.eye(4)
    pose[:2, :2] = [[np.cos(angle), -np.sin(angle)],
                    [np.sin(angle), np.cos(angle)]]
    pose[:3, 3] = rng.uniform(-100, 100, 3)
    return SampleScene('{0:06d}'.format(n), points, noisy, CLASSES,
                       clean_labels=clean, pose=pose, features=features)


def read_bytes(path):
    result = {}
    for name in sorted(os.listdir(path)):
        with open(os.path.join(path, name), 'rb') as file:
            result[name] = file.read()
    return result


def test_minimal(tmpdir):
    path = str(tmpdir.join('000000'))
    os.makedirs(path)
    with open(os.path.join(path, 'points.bin'), 'wb') as file:
        file.write(np.arange(9, dtype='<f4').tobytes())
    with open(os.path.join(path, 'noisy.labels'), 'wb') as file:
        file.write(np.array([0, 1, 2], dtype='<u2').tobytes())
    json_write(os.path.join(path, 'meta.json'),
               {'id': '000000', 'classes': list(CLASSES),
                'pose': np.eye(4).ravel().tolist(), 'n_points': 3,
                'n_features': 0})
    scene = read_scene(path, CLASSES)
    assert scene.n_points == 3
    assert_array_equal(scene.noisy_labels, [0, 1, 2])
    assert scene.clean_labels is None
    assert_array_equal(scene.points[2], [6, 7, 8])


def test_roundtrip(tmpdir, rng):
    for i, n in enumerate([0, 1, 17, 500]):
        scene = random_scene(rng, n, with_clean=bool(i % 2),
                             n_features=3 * (i % 2))
        first = str(tmpdir.join('first{0}'.format(i)))
        second = str(tmpdir.join('second{0}'.format(i)))
        write_scene(scene, first)
        read = read_scene(first)
        assert_array_equal(read.points, scene.points)
        assert_array_equal(read.noisy_labels, scene.noisy_labels)
        assert_array_equal(read.pose, scene.pose)
        write_scene(read, second)
        assert read_bytes(first) == read_bytes(second)


def test_empty_scene(tmpdir):
    path = str(tmpdir.join('empty'))
    write_scene(SampleScene('empty', np.zeros((0, 3)), [], CLASSES), path)
    assert os.path.getsize(os.path.join(path, 'points.bin')) == 0
    assert json_read(os.path.join(path, 'meta.json'))['n_points'] == 0
    assert read_scene(path).n_points == 0


def test_little_endian(tmpdir):
    path = str(tmpdir.join('s'))
    scene = SampleScene('s', [[1.5, -2, 0.25]], [UNLABELED], CLASSES)
    write_scene(scene, path)
    with open(os.path.join(path, 'points.bin'), 'rb') as file:
        assert file.read() == np.array([1.5, -2, 0.25], '<f4').tobytes()
    with open(os.path.join(path, 'noisy.labels'), 'rb') as file:
        assert file.read() == b'\xff\xff'


def test_stale_optional_files_removed(tmpdir, rng):
    path = str(tmpdir.join('s'))
    scene = random_scene(rng, 10)
    write_scene(scene, path)
    write_scene(scene.without_clean_labels(), path)
    assert read_scene(path).clean_labels is None


def test_errors(tmpdir, rng):
    path = str(tmpdir.join('s'))
    write_scene(random_scene(rng, 3), path)

    # label K is not the sentinel
    with open(os.path.join(path, 'noisy.labels'), 'wb') as file:
        file.write(np.array([0, 3, 1], '<u2').tobytes())
    with raises(LabelRangeError):
        read_scene(path)

    with open(os.path.join(path, 'noisy.labels'), 'wb') as file:
        file.write(np.array([0, 1], '<u2').tobytes())
    with raises(LengthMismatchError):
        read_scene(path)

    with open(os.path.join(path, 'noisy.labels'), 'wb') as file:
        file.write(b'\x00\x00\x00')
    with raises(SceneFormatError):
        read_scene(path)

    with open(os.path.join(path, 'noisy.labels'), 'wb') as file:
        file.write(np.array([0, 1, 2], '<u2').tobytes())
    read_scene(path)
    with raises(SceneFormatError):
        read_scene(path, ClassVocabulary(['a', 'b', 'c']))

    meta = json_read(os.path.join(path, 'meta.json'))
    del meta['pose']
    json_write(os.path.join(path, 'meta.json'), meta)
    with raises(SceneFormatError):
        read_scene(path)

    with open(os.path.join(path, 'meta.json'), 'w') as file:
        file.write('{no json')
    with raises(SceneFormatError):
        read_scene(path)


def test_crop(tmpdir):
    path = str(tmpdir.join('s'))
    points = [[0, 0, 0], [60, 0, 0], [10, -10, 1], [0, 0, -5]]
    write_scene(SampleScene('s', points, [0, 1, 2, 0], CLASSES), path)
    scene = read_scene(path, crop=([-50, -50, -4], [50, 50, 2]))
    assert scene.n_points == 2
    assert_array_equal(scene.noisy_labels, [0, 2])


def test_list_scenes(tmpdir, rng):
    for name in ['000002', '000000', '000001']:
        write_scene(random_scene(rng, 4), str(tmpdir.join(name)))
    os.makedirs(str(tmpdir.join('not_a_scene')))
    assert list_scenes(str(tmpdir)) == ['000000', '000001', '000002']


def test_labelmap_roundtrip(tmpdir):
    extrinsic = np.eye(4)
    extrinsic[:3, 3] = (0.1, -0.2, 0.3)
    camera = Camera(100, 100, 320, 240, extrinsic)
    labels = np.full((4, 6), UNLABELED)
    labels[1:3, 2:5] = 2
    labelmap = LabelMap2D(labels, camera, 3)
    filename = str(tmpdir.join('view0.map'))
    write_labelmap(labelmap, filename)
    with open(filename, 'rb') as file:
        assert file.readline() == b'6 4\n'
    assert os.path.exists(str(tmpdir.join('view0.json')))
    read = read_labelmap(filename, 3)
    assert (read.width, read.height) == (6, 4)
    assert_array_equal(read.labels, labels)
    assert_array_equal(read.camera.extrinsic, extrinsic)
    assert read.camera.fx == 100

    with open(filename, 'wb') as file:
        file.write(b'6 4\n\x00\x00')
    with raises(LengthMismatchError):
        read_labelmap(filename)
    with open(filename, 'wb') as file:
        file.write(b'six four\n')
    with raises(SceneFormatError):
        read_labelmap(filename)


def test_camera():
    camera = Camera(100, 100, 320, 240)
    u, v, z = camera.project([[0, 0, 10], [1, 0, 10], [0, 0, -5]])
    assert (u[0], v[0]) == (320, 240)
    assert (u[1], v[1]) == (330, 240)
    assert np.isnan(u[2]) and z[2] == -5
    with raises(ValueError):
        Camera(0, 100, 320, 240)
    with raises(ValueError):
        Camera(100, 100, np.inf, 240)
    with raises(TypeError):
        LabelMap2D(np.zeros((2, 2)), 'camera')
