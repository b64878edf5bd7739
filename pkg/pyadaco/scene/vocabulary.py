# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np

from ..utils.decorator_collection import lazyproperty_readonly
from ..utils.exceptions import LabelRangeError

__all__ = ['UNLABELED', 'ClassVocabulary', 'check_labels']

UNLABELED = 65535
"""Label of points (or pixels) without semantic annotation."""


def check_labels(labels, num_classes, name='labels'):
    """
    Converts labels to an int64 array and checks their range.

    Parameters
    ----------
    labels : array-like
        One-dimensional class indices.

    num_classes : `int`
        The number of classes ``K``.

    name : `str`, optional
        Used in the error message. Default is ``"labels"``.

    Returns
    -------
    labels : `numpy.ndarray`
        The labels as int64 array.

    Raises
    ------
    LabelRangeError
        If a label is neither in ``[0, K)`` nor `UNLABELED`.
    """
    labels = np.asarray(labels)
    if labels.dtype.kind not in 'iu':
        if labels.size and labels.dtype.kind == 'f' and np.all(
                labels == np.round(labels)):
            labels = labels.astype(np.int64)
        elif labels.size:
            raise LabelRangeError('{0} must be integer class indices.'
                                  ''.format(name))
    labels = labels.astype(np.int64).ravel()
    bad = ((labels < 0) | (labels >= num_classes)) & (labels != UNLABELED)
    if np.any(bad):
        raise LabelRangeError(
            '{0} contain {1} value(s) outside [0, {2}) that are not the '
            'unlabeled id {3}, e.g. {4}.'.format(
                name, int(bad.sum()), num_classes, UNLABELED,
                int(labels[bad][0])))
    return labels


class ClassVocabulary(object):
    """
    Ordered semantic class names.

    Parameters
    ----------
    names : iterable of `str`
        The class names. The position of a name is its class index.

    Raises
    ------
    ValueError
        If there are fewer than two classes, duplicate names or more classes
        than fit below the unlabeled id.
    """

    unlabeled_id = UNLABELED

    def __init__(self, names):
        names = tuple(str(name) for name in names)
        if len(names) < 2:
            raise ValueError('a vocabulary needs at least 2 classes.')
        if len(set(names)) != len(names):
            raise ValueError('class names must be unique.')
        if len(names) >= UNLABELED:
            raise ValueError('at most {0} classes are supported.'
                             ''.format(UNLABELED - 1))
        self._names = names

    @property
    def names(self):
        """(`tuple` of `str`) The class names in index order."""
        return self._names

    @lazyproperty_readonly
    def K(self):
        """(`int`) Number of semantic classes, without the unlabeled id."""
        return len(self._names)

    @lazyproperty_readonly
    def _index(self):
        return {name: idx for idx, name in enumerate(self._names)}

    def __len__(self):
        return self.K

    def __iter__(self):
        return iter(self._names)

    def __eq__(self, other):
        if not isinstance(other, ClassVocabulary):
            return NotImplemented
        return self._names == other._names

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(self._names)

    def __repr__(self):
        return 'ClassVocabulary({0!r})'.format(list(self._names))

    def index(self, name):
        """
        The class index of a name.

        Raises
        ------
        KeyError
            If the name is not part of the vocabulary.
        """
        try:
            return self._index[name]
        except KeyError:
            raise KeyError('unknown class {0!r}.'.format(name))

    def name(self, index):
        """
        The name of a class index, ``"unlabeled"`` for the unlabeled id.
        """
        if index == UNLABELED:
            return 'unlabeled'
        return self._names[index]

    def check(self, labels, name='labels'):
        """
        Shortcut for :func:`check_labels` with this vocabulary's ``K``.
        """
        return check_labels(labels, self.K, name)
