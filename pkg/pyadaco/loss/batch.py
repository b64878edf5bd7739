# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np
from scipy.special import log_softmax

from ..scene import UNLABELED
from ..utils.decorator_collection import lazyproperty_readonly
from ..utils.exceptions import EmptyBatchError, LengthMismatchError

__all__ = ['LogitsBatch']


class LogitsBatch(object):
    """
    Logits of a batch of points with their targets.

    Parameters
    ----------
    z : `numpy.ndarray`
        ``(N, K)`` finite logits.

    targets : array-like
        ``(N,)`` class indices; `~pyadaco.scene.UNLABELED` targets are
        ignored by every loss.

    features_2d, features_3d : `numpy.ndarray` or ``None``, optional
        A pair of ``(N, F)`` feature arrays for the feature alignment term.
        Default is ``None``.

    Raises
    ------
    LengthMismatchError
        If the shapes do not match.

    ValueError
        If a logit is not finite or a target is out of range.
    """

    def __init__(self, z, targets, features_2d=None, features_3d=None):
        z = np.array(z, dtype=np.float64)
        if z.ndim != 2:
            raise ValueError('logits must be (N, K).')
        if not np.all(np.isfinite(z)):
            raise ValueError('logits must be finite.')
        targets = np.asarray(targets, dtype=np.int64).ravel()
        if targets.shape[0] != z.shape[0]:
            raise LengthMismatchError('{0} logit rows but {1} targets.'.format(
                z.shape[0], targets.shape[0]))
        valid = targets != UNLABELED
        if np.any(targets[valid] < 0) or np.any(targets[valid] >= z.shape[1]):
            raise ValueError('targets must be in [0, {0}).'.format(
                z.shape[1]))
        if (features_2d is None) != (features_3d is None):
            raise ValueError('feature pairs need both arrays.')
        if features_2d is not None:
            features_2d = np.asarray(features_2d, dtype=np.float64)
            features_3d = np.asarray(features_3d, dtype=np.float64)
            if features_2d.shape != features_3d.shape:
                raise LengthMismatchError('feature pair shapes {0} and {1} '
                                          'differ.'.format(features_2d.shape,
                                                           features_3d.shape))
        self.z = z
        self.targets = targets
        self.valid = valid
        self.features_2d = features_2d
        self.features_3d = features_3d

    def __repr__(self):
        return '<LogitsBatch: {0} points, {1} classes, {2} ignored>'.format(
            self.z.shape[0], self.num_classes,
            self.z.shape[0] - self.n_valid)

    @property
    def num_classes(self):
        return self.z.shape[1]

    @lazyproperty_readonly
    def n_valid(self):
        """(`int`) Number of targets that are not ignored."""
        return int(np.count_nonzero(self.valid))

    @lazyproperty_readonly
    def log_p(self):
        """(`numpy.ndarray`) Log-softmax of the logits."""
        return log_softmax(self.z, axis=1)

    @lazyproperty_readonly
    def p(self):
        """(`numpy.ndarray`) Softmax probabilities."""
        return np.exp(self.log_p)

    def check_not_empty(self):
        """
        Raises
        ------
        EmptyBatchError
            If every target is ignored.
        """
        if self.n_valid == 0:
            raise EmptyBatchError('every target of the batch is ignored.')

    def onehot(self):
        """``(N, K)`` one-hot targets, zero rows for ignored points."""
        onehot = np.zeros_like(self.z)
        rows = np.flatnonzero(self.valid)
        onehot[rows, self.targets[rows]] = 1
        return onehot
