# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np

from .transform import check_rigid, IDENTITY
from .vocabulary import ClassVocabulary, UNLABELED
from ..utils.exceptions import LengthMismatchError

__all__ = ['SampleScene']


def _readonly(array):
    array.setflags(write=False)
    return array


class SampleScene(object):
    """
    One LiDAR-style sample.

    Parameters
    ----------
    id : `str`
        The sample identifier, also its directory name on disk.

    points : `numpy.ndarray`
        Point coordinates in the sample frame in meters, shape ``(N, 3)``.

    noisy_labels : `numpy.ndarray` or ``None``
        The labels used for training, shape ``(N,)``. May contain
        `~pyadaco.scene.UNLABELED`. ``None`` means every point is unlabeled.

    vocabulary : `~pyadaco.scene.ClassVocabulary` or iterable of `str`
        The classes the labels refer to.

    clean_labels : `numpy.ndarray` or ``None``, optional
        Ground-truth labels, only known for synthetic scenes.
        Default is ``None``.

    pose : `numpy.ndarray` or ``None``, optional
        4x4 rigid transformation from the sample frame to the world frame.
        ``None`` means identity. Default is ``None``.

    features : `numpy.ndarray` or ``None``, optional
        Per-point features of shape ``(N, F)``, e.g. the features of a 2D
        knowledge branch used by the feature alignment loss.
        Default is ``None``.

    Raises
    ------
    LengthMismatchError
        If the per-point arrays do not all have ``N`` rows.

    LabelRangeError
        If a label is out of range.

    ValueError
        If the points are not ``(N, 3)`` or the pose is not rigid.

    Notes
    -----
    Instances are immutable; the arrays are flagged read-only and the
    ``with_...`` methods return modified copies. This allows sharing scenes
    between worker threads without locking.
    """

    def __init__(self, id, points, noisy_labels, vocabulary,
                 clean_labels=None, pose=None, features=None):
        if not isinstance(vocabulary, ClassVocabulary):
            vocabulary = ClassVocabulary(vocabulary)
        points = np.array(points, dtype=np.float64)
        if points.size == 0:
            points = points.reshape(0, 3)
        if points.ndim != 2 or points.shape[1] != 3:
            raise ValueError('points must have shape (N, 3), got {0}.'
                             ''.format(points.shape))
        n = points.shape[0]

        if noisy_labels is None:
            noisy_labels = np.full(n, UNLABELED, dtype=np.int64)
        noisy_labels = vocabulary.check(noisy_labels, 'noisy labels')
        if noisy_labels.shape[0] != n:
            raise LengthMismatchError(
                'got {0} noisy labels for {1} points.'.format(
                    noisy_labels.shape[0], n))

        if clean_labels is not None:
            clean_labels = vocabulary.check(clean_labels, 'clean labels')
            if clean_labels.shape[0] != n:
                raise LengthMismatchError(
                    'got {0} clean labels for {1} points.'.format(
                        clean_labels.shape[0], n))
            clean_labels = _readonly(clean_labels.copy())

        if features is not None:
            features = np.array(features, dtype=np.float64)
            if features.ndim != 2:
                raise ValueError('features must have shape (N, F), got {0}.'
                                 ''.format(features.shape))
            if features.shape[0] != n:
                raise LengthMismatchError(
                    'got {0} feature rows for {1} points.'.format(
                        features.shape[0], n))
            features = _readonly(features)

        self._id = str(id)
        self._vocabulary = vocabulary
        self._points = _readonly(points)
        self._noisy = _readonly(noisy_labels.copy())
        self._clean = clean_labels
        self._pose = _readonly(
            IDENTITY.copy() if pose is None else check_rigid(pose, 'pose'))
        self._features = features

    def __repr__(self):
        return '<SampleScene {0!r}: {1} points, K={2}>'.format(
            self._id, self.n_points, self._vocabulary.K)

    @property
    def id(self):
        """(`str`) Sample identifier."""
        return self._id

    @property
    def vocabulary(self):
        """(`~pyadaco.scene.ClassVocabulary`) The classes."""
        return self._vocabulary

    @property
    def num_classes(self):
        """(`int`) ``K``."""
        return self._vocabulary.K

    @property
    def points(self):
        """(`numpy.ndarray`) ``(N, 3)`` coordinates in meters."""
        return self._points

    @property
    def n_points(self):
        """(`int`) ``N``."""
        return self._points.shape[0]

    @property
    def noisy_labels(self):
        """(`numpy.ndarray`) The current training labels."""
        return self._noisy

    @property
    def clean_labels(self):
        """(`numpy.ndarray` or ``None``) Ground truth if known."""
        return self._clean

    @property
    def pose(self):
        """(`numpy.ndarray`) Sample frame to world frame."""
        return self._pose

    @property
    def features(self):
        """(`numpy.ndarray` or ``None``) ``(N, F)`` point features."""
        return self._features

    @property
    def n_features(self):
        """(`int`) ``F``, ``0`` without features."""
        return 0 if self._features is None else self._features.shape[1]

    def _copy(self, **changes):
        kwargs = {'id': self._id, 'points': self._points,
                  'noisy_labels': self._noisy, 'vocabulary': self._vocabulary,
                  'clean_labels': self._clean, 'pose': self._pose,
                  'features': self._features}
        kwargs.update(changes)
        return self.__class__(**kwargs)

    def with_noisy_labels(self, labels):
        """
        A copy with other training labels, e.g. after refurbishment.
        """
        return self._copy(noisy_labels=labels)

    def with_features(self, features):
        """
        A copy with other per-point features (``None`` removes them).
        """
        return self._copy(features=features)

    def without_clean_labels(self):
        """
        A copy without ground truth.

        The trainer only ever sees scenes passed through this method, so
        clean labels cannot leak into training.
        """
        return self._copy(clean_labels=None)

    def subset(self, mask):
        """
        A copy with only the points selected by ``mask`` (boolean or
        indices).
        """
        mask = np.asarray(mask)
        return self._copy(
            points=self._points[mask],
            noisy_labels=self._noisy[mask],
            clean_labels=None if self._clean is None else self._clean[mask],
            features=None if self._features is None else self._features[mask])
