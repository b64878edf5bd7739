# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np
from scipy.special import entr

from ..utils.decorator_collection import lazyproperty_readonly
from ..utils.exceptions import LabelRangeError, LengthMismatchError, \
    SceneFormatError

__all__ = ['PredictionHistory', 'ReliableSet', 'write_history',
           'read_history']


class ReliableSet(object):
    """
    Points with consistent predictions and their reliable labels.

    Parameters
    ----------
    indices : array-like
        Sorted, unique point indices.

    labels : array-like
        Reliable label of each of these points.
    """

    def __init__(self, indices, labels):
        indices = np.asarray(indices, dtype=np.int64).ravel()
        labels = np.asarray(labels, dtype=np.int64).ravel()
        if indices.shape != labels.shape:
            raise LengthMismatchError('got {0} indices but {1} labels.'.format(
                indices.size, labels.size))
        if indices.size and np.any(np.diff(indices) <= 0):
            raise ValueError('reliable indices must be sorted and unique.')
        self.indices = indices
        self.labels = labels

    def __len__(self):
        return self.indices.size

    def __repr__(self):
        return '<ReliableSet: {0} points>'.format(len(self))

    def as_labels(self, n_points, fill):
        """
        Labels of all ``n_points`` points, ``fill`` where not reliable.
        """
        labels = np.full(n_points, fill, dtype=np.int64)
        labels[self.indices] = self.labels
        return labels


class PredictionHistory(object):
    """
    The last ``t_m`` predicted labels of every point of every sample.

    Parameters
    ----------
    num_classes : `int`
        ``K``, at least 2.

    t_m : `int`, optional
        Number of rounds kept per sample. Default is ``5``.

    Notes
    -----
    Every sample has a ring buffer of ``t_m x N`` 16-bit class indices;
    recording a round evicts the oldest one once the buffer is full.
    """

    def __init__(self, num_classes, t_m=5):
        num_classes = int(num_classes)
        t_m = int(t_m)
        if num_classes < 2:
            raise ValueError('the confidence needs at least 2 classes.')
        if num_classes > np.iinfo(np.uint16).max:
            raise ValueError('at most {0} classes fit into 16 bits.'.format(
                np.iinfo(np.uint16).max))
        if t_m < 1:
            raise ValueError('t_m must be at least 1.')
        self.num_classes = num_classes
        self.t_m = t_m
        self._buffers = {}
        self._valid = {}
        self._next = {}

    def __contains__(self, sample):
        return sample in self._buffers

    def __repr__(self):
        return '<PredictionHistory: {0} samples, t_m={1}>'.format(
            len(self._buffers), self.t_m)

    @lazyproperty_readonly
    def _log_k(self):
        return np.log(self.num_classes)

    def record(self, sample, predictions):
        """
        Appends one round of predictions of a sample.

        Parameters
        ----------
        sample : `str`
            The sample id.

        predictions : array-like
            ``(N,)`` class indices in ``[0, K)``.

        Raises
        ------
        LengthMismatchError
            If ``N`` differs from the earlier rounds.

        LabelRangeError
            If a prediction is not a class index.
        """
        predictions = np.asarray(predictions).ravel()
        if predictions.size and (predictions.min() < 0 or
                                 predictions.max() >= self.num_classes):
            raise LabelRangeError('predictions must be in [0, {0}).'.format(
                self.num_classes))
        if sample not in self._buffers:
            self._buffers[sample] = np.zeros((self.t_m, predictions.size),
                                             dtype=np.uint16)
            self._valid[sample] = 0
            self._next[sample] = 0
        buffer = self._buffers[sample]
        if buffer.shape[1] != predictions.size:
            raise LengthMismatchError(
                'sample {0} has {1} points, got {2} predictions.'.format(
                    sample, buffer.shape[1], predictions.size))
        buffer[self._next[sample]] = predictions
        self._next[sample] = (self._next[sample] + 1) % self.t_m
        self._valid[sample] = min(self._valid[sample] + 1, self.t_m)

    def q_valid(self, sample):
        """Number of stored rounds of a sample (0 if never recorded)."""
        return self._valid.get(sample, 0)

    def rounds(self, sample):
        """
        Stored predictions of a sample, oldest round first.

        Returns
        -------
        rounds : `numpy.ndarray`
            ``(q_valid, N)`` int64.
        """
        q = self.q_valid(sample)
        if q == 0:
            return np.zeros((0, 0), dtype=np.int64)
        order = (self._next[sample] - q + np.arange(q)) % self.t_m
        return self._buffers[sample][order].astype(np.int64)

    def _rounds_checked(self, sample):
        rounds = self.rounds(sample)
        if rounds.shape[0] == 0:
            raise ValueError('sample {0!r} has no recorded predictions.'
                             ''.format(sample))
        return rounds

    def class_distribution(self, sample, point=None):
        """
        Fraction of the stored rounds predicting each class.

        Parameters
        ----------
        sample : `str`
            The sample id.

        point : `int` or ``None``, optional
            One point, or all points if ``None``. Default is ``None``.

        Returns
        -------
        p : `numpy.ndarray`
            ``(K,)`` for one point, ``(N, K)`` for all.

        Raises
        ------
        ValueError
            If nothing was recorded for the sample.
        """
        rounds = self._rounds_checked(sample)
        if point is not None:
            rounds = rounds[:, [point]]
        n = rounds.shape[1]
        counts = np.zeros((n, self.num_classes), dtype=np.float64)
        points = np.arange(n)
        for row in rounds:
            counts[points, row] += 1
        p = counts / rounds.shape[0]
        return p[0] if point is not None else p

    def confidence(self, sample, point=None):
        """
        One minus the normalized entropy of the class distribution.

        Returns
        -------
        confidence : `float` or `numpy.ndarray`
            ``1`` for unanimous rounds, ``0`` when every class was predicted
            equally often.

        Examples
        --------
        Rounds ``1, 1, 1, 2, 2`` with ``K = 4`` give an entropy of
        0.67301 nats and a confidence of 0.51454.
        """
        p = self.class_distribution(sample, point)
        entropy = entr(p).sum(axis=-1)
        return 1. - entropy / self._log_k

    def reliable_set(self, sample, gamma=0.9):
        """
        Points whose confidence is at least ``gamma``.

        Returns
        -------
        reliable : `ReliableSet`
            The points and their most frequent predicted class (the lowest
            class on ties).
        """
        p = self.class_distribution(sample)
        confidence = 1. - entr(p).sum(axis=-1) / self._log_k
        indices = np.flatnonzero(confidence >= gamma)
        return ReliableSet(indices, np.argmax(p[indices], axis=1))


def write_history(history, sample, filename):
    """
    Dumps the rounds of one sample.

    The file holds the ASCII header ``"q N\\n"`` followed by the ``q x N``
    class indices as little-endian uint16, oldest round first.
    """
    rounds = history.rounds(sample)
    with open(filename, 'wb') as file:
        file.write('{0} {1}\n'.format(*rounds.shape).encode('ascii'))
        file.write(rounds.astype('<u2').tobytes())


def read_history(filename):
    """
    Reads a dump of :func:`write_history`.

    Returns
    -------
    rounds : `numpy.ndarray`
        ``(q, N)`` int64.

    Raises
    ------
    SceneFormatError
        If the header is malformed or the size does not match it.
    """
    with open(filename, 'rb') as file:
        data = file.read()
    newline = data.find(b"\n")
    try:
        if newline < 0:
            raise ValueError
        q, n = (int(v) for v in data[:newline].decode('ascii').split())
    except ValueError:
        raise SceneFormatError('{0} does not start with a "q N" header.'
                               ''.format(filename))
    body = data[newline + 1:]
    if len(body) != 2 * q * n:
        raise LengthMismatchError('{0} holds {1} bytes, expected {2}.'.format(
            filename, len(body), 2 * q * n))
    return np.frombuffer(body, dtype='<u2').reshape(q, n).astype(np.int64)
