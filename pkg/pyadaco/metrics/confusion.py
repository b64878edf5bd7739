# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np

from ..scene import UNLABELED
from ..utils.decorator_collection import lazyproperty_readonly
from ..utils.exceptions import LengthMismatchError, MetricUndefinedError

__all__ = ['ConfusionMatrix', 'confusion', 'miou', 'macc', 'label_quality']


class ConfusionMatrix(object):
    """
    Class confusion counts.

    Parameters
    ----------
    counts : `numpy.ndarray`
        ``K x K`` non-negative counts, rows are the ground truth and columns
        the prediction.

    ignored : `int`, optional
        Number of points without ground truth. Default is ``0``.
    """

    def __init__(self, counts, ignored=0):
        counts = np.array(counts, dtype=np.int64)
        if counts.ndim != 2 or counts.shape[0] != counts.shape[1]:
            raise ValueError('the confusion counts must be a square matrix.')
        if np.any(counts < 0) or ignored < 0:
            raise ValueError('counts must be non-negative.')
        counts.setflags(write=False)
        self.counts = counts
        self.ignored = int(ignored)

    def __repr__(self):
        return '<ConfusionMatrix: {0} classes, {1} points, {2} ignored>' \
               ''.format(self.num_classes, self.total, self.ignored)

    def __add__(self, other):
        if not isinstance(other, ConfusionMatrix):
            return NotImplemented
        if other.num_classes != self.num_classes:
            raise ValueError('cannot add confusion matrices of {0} and {1} '
                             'classes.'.format(self.num_classes,
                                               other.num_classes))
        return ConfusionMatrix(self.counts + other.counts,
                               self.ignored + other.ignored)

    @property
    def num_classes(self):
        return self.counts.shape[0]

    @lazyproperty_readonly
    def total(self):
        """(`int`) Number of evaluated points."""
        return int(self.counts.sum())

    @lazyproperty_readonly
    def iou(self):
        """
        (`numpy.ndarray`) IoU per class, ``nan`` for classes that neither
        occur in the ground truth nor in the prediction.
        """
        tp = np.diag(self.counts).astype(np.float64)
        union = self.counts.sum(axis=0) + self.counts.sum(axis=1) - tp
        with np.errstate(invalid='ignore', divide='ignore'):
            return np.where(union > 0, tp / union, np.nan)

    @lazyproperty_readonly
    def recall(self):
        """
        (`numpy.ndarray`) Accuracy per ground-truth class, ``nan`` for
        classes without ground-truth points.
        """
        tp = np.diag(self.counts).astype(np.float64)
        support = self.counts.sum(axis=1)
        with np.errstate(invalid='ignore', divide='ignore'):
            return np.where(support > 0, tp / support, np.nan)


def confusion(gt, pred, num_classes):
    """
    Tallies a confusion matrix.

    Parameters
    ----------
    gt : array-like
        Ground-truth class indices; `~pyadaco.scene.UNLABELED` points are
        counted as ignored.

    pred : array-like
        Predicted class indices in ``[0, K)``.

    num_classes : `int`
        ``K``.

    Returns
    -------
    cm : `ConfusionMatrix`

    Raises
    ------
    LengthMismatchError
        If the arrays differ in length.

    ValueError
        If a label is out of range.

    Examples
    --------
    >>> from pyadaco.metrics import confusion
    >>> confusion([0, 0, 1], [0, 1, 1], 2).counts.tolist()
    [[1, 1], [0, 1]]
    """
    gt = np.asarray(gt, dtype=np.int64).ravel()
    pred = np.asarray(pred, dtype=np.int64).ravel()
    if gt.shape != pred.shape:
        raise LengthMismatchError('got {0} ground-truth labels but {1} '
                                  'predictions.'.format(gt.size, pred.size))
    valid = gt != UNLABELED
    gt, pred = gt[valid], pred[valid]
    if gt.size and (gt.min() < 0 or gt.max() >= num_classes or
                    pred.min() < 0 or pred.max() >= num_classes):
        raise ValueError('labels must be in [0, {0}).'.format(num_classes))
    counts = np.bincount(gt * num_classes + pred,
                         minlength=num_classes * num_classes)
    return ConfusionMatrix(counts.reshape(num_classes, num_classes),
                           np.count_nonzero(~valid))


def miou(cm):
    """
    Mean intersection over union.

    Returns
    -------
    miou : `float`
        Mean IoU over the classes present in the ground truth or the
        prediction.

    iou : `numpy.ndarray`
        IoU per class, ``nan`` for absent classes.

    Raises
    ------
    MetricUndefinedError
        If no class is present.
    """
    iou = cm.iou
    present = ~np.isnan(iou)
    if not present.any():
        raise MetricUndefinedError('mIoU is undefined without any class.')
    return float(iou[present].mean()), iou.copy()


def macc(cm):
    """
    Mean per-class accuracy (recall) over the classes with ground truth.

    Raises
    ------
    MetricUndefinedError
        If there is no ground truth.
    """
    recall = cm.recall
    present = ~np.isnan(recall)
    if not present.any():
        raise MetricUndefinedError('mAcc is undefined without ground truth.')
    return float(recall[present].mean())


def label_quality(clean, labels, num_classes):
    """
    Audits training labels against clean labels.

    Parameters
    ----------
    clean : array-like
        Clean class indices (`~pyadaco.scene.UNLABELED` points are skipped).

    labels : array-like
        Noisy or refurbished labels; unlabeled points count as wrong.

    num_classes : `int`
        ``K``.

    Returns
    -------
    quality : `dict`
        ``accuracy`` (fraction of correct labels), ``miou`` (the unlabeled
        points count as false negatives of their clean class) and
        ``unlabeled`` (fraction of unlabeled points).
    """
    clean = np.asarray(clean, dtype=np.int64).ravel()
    labels = np.asarray(labels, dtype=np.int64).ravel()
    if clean.shape != labels.shape:
        raise LengthMismatchError('got {0} clean labels but {1} labels.'
                                  ''.format(clean.size, labels.size))
    valid = clean != UNLABELED
    clean, labels = clean[valid], labels[valid]
    if clean.size == 0:
        raise MetricUndefinedError('no clean labels to compare with.')
    missing = labels == UNLABELED
    # the extra class collects unlabeled points
    extended = np.where(missing, num_classes, labels)
    cm = confusion(clean, extended, num_classes + 1)
    tp = np.diag(cm.counts)[:num_classes].astype(np.float64)
    union = (cm.counts[:, :num_classes].sum(axis=0) +
             cm.counts[:num_classes].sum(axis=1) - tp)
    present = union > 0
    return {'accuracy': float(np.mean(clean == labels)),
            'miou': float((tp[present] / union[present]).mean()),
            'unlabeled': float(np.mean(missing))}
