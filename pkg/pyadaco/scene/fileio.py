# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
File layout of a scene directory::

    <id>/points.bin     N x 3 little-endian float32 (x, y, z)
    <id>/noisy.labels   N little-endian uint16
    <id>/clean.labels   N little-endian uint16 (optional)
    <id>/features.bin   N x F little-endian float32 (optional)
    <id>/meta.json      {"id", "classes", "pose", "n_points", "n_features"}

``pose`` holds the 16 entries of the 4x4 sample-to-world transformation in
row-major order.

A label map is a binary grid preceded by the one-line ASCII header
``"W H\\n"`` and followed by ``H x W`` little-endian uint16 values in
row-major order. Its calibration is a JSON sidecar with the same base name
and the keys ``"intrinsics"`` (``fx, fy, cx, cy``) and ``"extrinsic"``.
"""

import os

import numpy as np
from astropy import log

from .labelmap import Camera, LabelMap2D
from .sample import SampleScene
from .vocabulary import ClassVocabulary
from ..utils.exceptions import SceneFormatError, LengthMismatchError
from ..utils.json_io import json_read, json_write

__all__ = ['read_scene', 'write_scene', 'list_scenes', 'read_labelmap',
           'write_labelmap', 'POINTS_FILE', 'NOISY_FILE', 'CLEAN_FILE',
           'FEATURES_FILE', 'META_FILE']

POINTS_FILE = 'points.bin'
NOISY_FILE = 'noisy.labels'
CLEAN_FILE = 'clean.labels'
FEATURES_FILE = 'features.bin'
META_FILE = 'meta.json'

_META_KEYS = ('id', 'classes', 'pose', 'n_points', 'n_features')


def _read_raw(filename, dtype, itemsize):
    with open(filename, 'rb') as file:
        data = file.read()
    if len(data) % itemsize:
        raise SceneFormatError(
            '{0} has {1} bytes which is not a multiple of the record size '
            '{2}.'.format(filename, len(data), itemsize))
    return np.frombuffer(data, dtype=dtype)


def _read_labels(filename, n):
    labels = _read_raw(filename, '<u2', 2)
    if labels.shape[0] != n:
        raise LengthMismatchError('{0} holds {1} labels for {2} points.'
                                  ''.format(filename, labels.shape[0], n))
    return labels.astype(np.int64)


def read_scene(path, vocabulary=None, crop=None):
    """
    Reads a scene directory.

    Parameters
    ----------
    path : `str` or path-like
        The scene directory.

    vocabulary : `~pyadaco.scene.ClassVocabulary` or ``None``, optional
        If given, the classes stored in the scene must be the same.
        Default is ``None``.

    crop : ``(lower, upper)`` or ``None``, optional
        Two 3-vectors of an axis-aligned box in the sample frame. Points
        outside the box (bounds inclusive) are dropped while reading.
        Default is ``None``.

    Returns
    -------
    scene : `~pyadaco.scene.SampleScene`
        The validated scene with ``N = size(points.bin) / 12`` points
        (before cropping).

    Raises
    ------
    SceneFormatError
        If ``meta.json`` is malformed, a binary file has a size that is no
        multiple of its record size or the classes differ from
        ``vocabulary``.

    LengthMismatchError
        If the label, feature or meta point counts disagree.

    LabelRangeError
        If a label is out of range.

    Notes
    -----
    A missing ``noisy.labels`` file means no point is labeled yet (scenes
    before label generation).
    """
    try:
        meta = json_read(os.path.join(path, META_FILE))
    except ValueError as exc:
        raise SceneFormatError('{0} is not valid JSON: {1}'.format(
            os.path.join(path, META_FILE), exc))
    if not isinstance(meta, dict) or any(key not in meta
                                         for key in _META_KEYS):
        raise SceneFormatError('{0} must contain the keys {1}.'.format(
            os.path.join(path, META_FILE), ', '.join(_META_KEYS)))
    try:
        classes = ClassVocabulary(meta['classes'])
        pose = np.array(meta['pose'], dtype=np.float64).reshape(4, 4)
    except (ValueError, TypeError) as exc:
        raise SceneFormatError('invalid meta data in {0}: {1}'.format(
            path, exc))
    if vocabulary is not None and classes != vocabulary:
        raise SceneFormatError('scene {0} uses the classes {1}, expected {2}.'
                               ''.format(meta['id'], list(classes),
                                         list(vocabulary)))

    points = _read_raw(os.path.join(path, POINTS_FILE), '<f4', 12)
    points = points.reshape(-1, 3).astype(np.float64)
    n = points.shape[0]
    if int(meta['n_points']) != n:
        raise LengthMismatchError(
            '{0} declares {1} points but {2} holds {3}.'.format(
                META_FILE, meta['n_points'], POINTS_FILE, n))

    noisy_file = os.path.join(path, NOISY_FILE)
    noisy = _read_labels(noisy_file, n) if os.path.exists(noisy_file) \
        else None
    clean_file = os.path.join(path, CLEAN_FILE)
    clean = _read_labels(clean_file, n) if os.path.exists(clean_file) \
        else None

    features = None
    n_features = int(meta['n_features'])
    if n_features:
        features = _read_raw(os.path.join(path, FEATURES_FILE), '<f4', 4)
        if features.shape[0] != n * n_features:
            raise LengthMismatchError(
                '{0} holds {1} values, expected {2} x {3}.'.format(
                    FEATURES_FILE, features.shape[0], n, n_features))
        features = features.reshape(n, n_features).astype(np.float64)

    try:
        scene = SampleScene(meta['id'], points, noisy, classes,
                            clean_labels=clean, pose=pose, features=features)
    except SceneFormatError:
        raise
    except ValueError as exc:
        raise SceneFormatError('invalid scene {0}: {1}'.format(path, exc))

    if crop is not None:
        lower, upper = (np.asarray(bound, dtype=np.float64)
                        for bound in crop)
        inside = np.all((scene.points >= lower) & (scene.points <= upper),
                        axis=1)
        if not np.all(inside):
            log.debug('cropping {0} of {1} points of scene {2}.'.format(
                int((~inside).sum()), n, scene.id))
            scene = scene.subset(inside)
    return scene


def write_scene(scene, path):
    """
    Writes a scene directory.

    Parameters
    ----------
    scene : `~pyadaco.scene.SampleScene`
        The scene.

    path : `str` or path-like
        The scene directory, created if necessary. Optional files of the
        layout that the scene does not have are removed.

    Raises
    ------
    OSError
        If the directory is not writable.

    Notes
    -----
    Coordinates and features are stored as float32, so only values that are
    representable in float32 survive unchanged. Writing a scene that was
    read from disk reproduces the files byte by byte.
    """
    os.makedirs(path, exist_ok=True)
    with open(os.path.join(path, POINTS_FILE), 'wb') as file:
        file.write(scene.points.astype('<f4').tobytes())
    with open(os.path.join(path, NOISY_FILE), 'wb') as file:
        file.write(scene.noisy_labels.astype('<u2').tobytes())

    clean_file = os.path.join(path, CLEAN_FILE)
    if scene.clean_labels is not None:
        with open(clean_file, 'wb') as file:
            file.write(scene.clean_labels.astype('<u2').tobytes())
    elif os.path.exists(clean_file):
        os.remove(clean_file)

    features_file = os.path.join(path, FEATURES_FILE)
    if scene.features is not None:
        with open(features_file, 'wb') as file:
            file.write(scene.features.astype('<f4').tobytes())
    elif os.path.exists(features_file):
        os.remove(features_file)

    json_write(os.path.join(path, META_FILE),
               {'id': scene.id,
                'classes': list(scene.vocabulary.names),
                'pose': [float(v) for v in scene.pose.ravel()],
                'n_points': scene.n_points,
                'n_features': scene.n_features})


def list_scenes(directory):
    """
    The sorted names of all scene directories (containing ``meta.json``)
    inside ``directory``.
    """
    return sorted(name for name in os.listdir(directory)
                  if os.path.isfile(os.path.join(directory, name, META_FILE)))


def _calibration_file(filename):
    return os.path.splitext(str(filename))[0] + '.json'


def read_labelmap(filename, num_classes=None):
    """
    Reads a label map and its calibration sidecar.

    Parameters
    ----------
    filename : `str` or path-like
        The label grid file; the calibration is read from the file with the
        same base name and the extension ``.json``.

    num_classes : `int` or ``None``, optional
        Passed to `~pyadaco.scene.LabelMap2D`. Default is ``None``.

    Returns
    -------
    labelmap : `~pyadaco.scene.LabelMap2D`

    Raises
    ------
    SceneFormatError
        If the header is malformed or the grid size does not match it.
    """
    with open(filename, 'rb') as file:
        data = file.read()
    newline = data.find(b"\n")
    if newline < 0:
        raise SceneFormatError('{0} does not start with a "W H" header.'
                               ''.format(filename))
    try:
        width, height = (int(v) for v in data[:newline].decode('ascii')
                         .split())
    except ValueError:
        raise SceneFormatError('{0} does not start with a "W H" header.'
                               ''.format(filename))
    if width < 0 or height < 0:
        raise SceneFormatError('{0} does not start with a "W H" header.'
                               ''.format(filename))
    grid = data[newline + 1:]
    if len(grid) != 2 * width * height:
        raise LengthMismatchError(
            '{0} holds {1} bytes, expected {2} for {3}x{4} pixels.'.format(
                filename, len(grid), 2 * width * height, width, height))
    labels = np.frombuffer(grid, dtype='<u2').reshape(height, width)
    try:
        camera = Camera.from_dict(json_read(_calibration_file(filename)))
    except (KeyError, TypeError) as exc:
        raise SceneFormatError('calibration of {0} is incomplete: {1}'
                               ''.format(filename, exc))
    return LabelMap2D(labels.astype(np.int64), camera, num_classes)


def write_labelmap(labelmap, filename):
    """
    Writes a label map and its calibration sidecar (see
    :func:`read_labelmap`).
    """
    with open(filename, 'wb') as file:
        file.write('{0} {1}\n'.format(labelmap.width, labelmap.height)
                   .encode('ascii'))
        file.write(labelmap.labels.astype('<u2').tobytes())
    json_write(_calibration_file(filename), labelmap.camera.to_dict())
