# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np

from ..utils.decorator_collection import format_doc
from ..utils.exceptions import LengthMismatchError

__all__ = ['softmax_ce', 'nce', 'mae', 'feature_mse', 'lovasz_softmax',
           'lovasz_grad']

_TEMPLATE = """
    {0}

    Parameters
    ----------
    batch : `~pyadaco.loss.LogitsBatch`
        Logits and targets; ignored targets contribute neither to the value
        nor to the gradient.

    Returns
    -------
    value : `float`
        {1}

    gradient : `numpy.ndarray`
        ``(N, K)`` derivative of ``value`` with respect to the logits.

    Raises
    ------
    EmptyBatchError
        If every target is ignored.
    {__doc__}"""


def _softmax_backward(p, grad_p):
    """Chain rule through the softmax of every row."""
    return p * (grad_p - (p * grad_p).sum(axis=1, keepdims=True))


@format_doc(_TEMPLATE, 'Cross entropy of the softmax.',
            'Mean of ``-log p(y)`` over the valid points.')
def softmax_ce(batch):
    """
    Examples
    --------
    >>> from pyadaco.loss import LogitsBatch, softmax_ce
    >>> round(softmax_ce(LogitsBatch([[0., 0.]], [0]))[0], 5)
    0.69315
    """
    batch.check_not_empty()
    rows = np.flatnonzero(batch.valid)
    value = -batch.log_p[rows, batch.targets[rows]].mean()
    gradient = (batch.p - batch.onehot()) / batch.n_valid
    gradient[~batch.valid] = 0
    return float(value), gradient


@format_doc(_TEMPLATE, 'Normalized cross entropy.',
            'Mean of ``log p(y) / sum_k log p(k)`` over the valid points, '
            'in ``[0, 1]``.')
def nce(batch):
    """
    Notes
    -----
    The value does not change when a constant is added to all logits of a
    point. Uniform probabilities give ``1 / K`` for any target.
    """
    batch.check_not_empty()
    if batch.num_classes < 2:
        raise ValueError('the normalized cross entropy needs 2 classes.')
    rows = np.flatnonzero(batch.valid)
    log_p = batch.log_p[rows]
    p = batch.p[rows]
    k = batch.num_classes
    target = log_p[np.arange(rows.size), batch.targets[rows]]
    total = log_p.sum(axis=1)
    value = np.mean(target / total)
    onehot = batch.onehot()[rows]
    # d log p(y) / dz = onehot - p and d sum_k log p(k) / dz = 1 - K p
    grad_rows = ((onehot - p) * total[:, None] -
                 (1 - k * p) * target[:, None]) / total[:, None] ** 2
    gradient = np.zeros_like(batch.z)
    gradient[rows] = grad_rows / rows.size
    return float(value), gradient


@format_doc(_TEMPLATE, 'Mean absolute error between the one-hot targets and '
            'the probabilities.',
            'Mean of ``|onehot(y) - p|_1 = 2 (1 - p(y))``, in ``[0, 2]``.')
def mae(batch):
    batch.check_not_empty()
    rows = np.flatnonzero(batch.valid)
    p = batch.p[rows]
    p_target = p[np.arange(rows.size), batch.targets[rows]]
    value = np.mean(2 * (1 - p_target))
    gradient = np.zeros_like(batch.z)
    gradient[rows] = (-2 * p_target[:, None] *
                      (batch.onehot()[rows] - p) / rows.size)
    return float(value), gradient


def feature_mse(features_2d, features_3d):
    """
    Mean squared difference of two feature arrays.

    Parameters
    ----------
    features_2d : `numpy.ndarray`
        Target features.

    features_3d : `numpy.ndarray`
        Features that are aligned to them.

    Returns
    -------
    value : `float`

    gradient : `numpy.ndarray`
        Derivative with respect to ``features_3d``.

    Raises
    ------
    LengthMismatchError
        If the shapes differ.
    """
    features_2d = np.asarray(features_2d, dtype=np.float64)
    features_3d = np.asarray(features_3d, dtype=np.float64)
    if features_2d.shape != features_3d.shape:
        raise LengthMismatchError('feature shapes {0} and {1} differ.'.format(
            features_2d.shape, features_3d.shape))
    if features_2d.size == 0:
        return 0., np.zeros_like(features_3d)
    diff = features_3d - features_2d
    return float(np.mean(diff ** 2)), 2 * diff / diff.size


def lovasz_grad(gt_sorted):
    """
    Gradient of the Lovasz extension of the Jaccard loss.

    Parameters
    ----------
    gt_sorted : `numpy.ndarray`
        Foreground indicator of the points sorted by decreasing error.
    """
    gt_sorted = np.asarray(gt_sorted, dtype=np.float64)
    gts = gt_sorted.sum()
    intersection = gts - np.cumsum(gt_sorted)
    union = gts + np.cumsum(1 - gt_sorted)
    jaccard = 1. - intersection / union
    jaccard[1:] = jaccard[1:] - jaccard[:-1]
    return jaccard


@format_doc(_TEMPLATE, 'Lovasz-Softmax loss, a convex surrogate of the '
            'per-class Jaccard index.',
            'Mean over the classes present in the valid targets.')
def lovasz_softmax(batch):
    """
    Notes
    -----
    For class ``c`` the errors are ``1 - p(c)`` on points of class ``c`` and
    ``p(c)`` elsewhere. The loss of the class is the dot product of the
    errors sorted in decreasing order with :func:`lovasz_grad` of the
    correspondingly sorted foreground. The gradient is the subgradient for
    that fixed order.
    """
    batch.check_not_empty()
    rows = np.flatnonzero(batch.valid)
    p = batch.p[rows]
    targets = batch.targets[rows]
    classes = np.unique(targets)
    grad_p = np.zeros_like(p)
    value = 0.
    for c in classes:
        foreground = (targets == c).astype(np.float64)
        errors = np.abs(foreground - p[:, c])
        order = np.argsort(-errors, kind='stable')
        weights = lovasz_grad(foreground[order])
        value += errors[order].dot(weights)
        sign = np.where(foreground[order] > 0, -1., 1.)
        grad_p[order, c] += sign * weights
    value /= classes.size
    grad_p /= classes.size
    gradient = np.zeros_like(batch.z)
    gradient[rows] = _softmax_backward(p, grad_p)
    return float(value), gradient
