# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np

from .components import softmax_ce, nce, mae, feature_mse, lovasz_softmax
from .config import LossConfig, PHASES

__all__ = ['arl', 'combine_terms', 'term_weights', 'ArlState']


def _check_phase(phase):
    if phase not in PHASES:
        raise ValueError('phase must be one of {0}, got {1!r}.'.format(
            PHASES, phase))


def term_weights(cfg, phase):
    """
    Weight of every loss term in a phase.

    Returns
    -------
    weights : `dict`
        Keys ``'ce'``, ``'lovasz'``, ``'mse'``, ``'nce'`` and ``'mae'``.
    """
    _check_phase(phase)
    weights = {'ce': 1., 'lovasz': 1., 'mse': 1. if cfg.use_feature_mse
               else 0., 'nce': 0., 'mae': 0.}
    if phase == 'correction':
        weights.update(ce=1. + cfg.sigma, nce=cfg.lam, mae=cfg.beta)
    return weights


def combine_terms(terms, cfg, phase):
    """
    The adaptive robust loss from the values of its terms.

    Parameters
    ----------
    terms : `dict`
        Values of the terms named in :func:`term_weights`; missing terms
        count as ``0``.

    cfg : `~pyadaco.loss.LossConfig`

    phase : {'warmup', 'correction'}

    Examples
    --------
    >>> from pyadaco.loss import LossConfig, combine_terms
    >>> terms = {'ce': 1.0, 'lovasz': 0.2, 'nce': 0.3, 'mae': 0.6}
    >>> round(combine_terms(terms, LossConfig(), 'correction'), 6)
    30.81
    """
    weights = term_weights(cfg, phase)
    return float(sum(weight * terms.get(name, 0.)
                     for name, weight in weights.items() if weight != 0))


def arl(batch, cfg=None, phase='warmup'):
    """
    Adaptive robust loss of a batch.

    In the warmup phase the loss is ``CE + MSE + Lovasz``. After the
    correction of a sample it is ``lam NCE + beta MAE + (1 + sigma) CE +
    MSE + Lovasz``. The feature term only counts if enabled and the batch
    carries a feature pair.

    Parameters
    ----------
    batch : `~pyadaco.loss.LogitsBatch`

    cfg : `~pyadaco.loss.LossConfig` or ``None``, optional
        Default is the default configuration.

    phase : {'warmup', 'correction'}, optional
        Default is ``'warmup'``.

    Returns
    -------
    value : `float`

    gradient : `numpy.ndarray`
        Derivative with respect to the logits.

    terms : `dict`
        The unweighted value of every evaluated term.

    feature_gradient : `numpy.ndarray` or ``None``
        Derivative with respect to ``batch.features_3d`` if the feature
        term is active.
    """
    if cfg is None:
        cfg = LossConfig()
    weights = term_weights(cfg, phase)
    components = (('ce', softmax_ce), ('lovasz', lovasz_softmax),
                  ('nce', nce), ('mae', mae))
    terms = {}
    gradient = np.zeros_like(batch.z)
    for name, func in components:
        if weights[name] == 0 and name != 'ce':
            continue
        terms[name], grad = func(batch)
        gradient += weights[name] * grad
    feature_gradient = None
    if weights['mse'] and batch.features_2d is not None:
        terms['mse'], feature_gradient = feature_mse(batch.features_2d,
                                                     batch.features_3d)
    return combine_terms(terms, cfg, phase), gradient, terms, feature_gradient


class ArlState(object):
    """
    Phase of the adaptive robust loss for one sample.

    The phase starts as ``'warmup'`` and switches to ``'correction'`` once,
    when the labels of the sample are corrected; it never switches back.

    Parameters
    ----------
    cfg : `~pyadaco.loss.LossConfig` or ``None``, optional
        Default is the default configuration.
    """

    def __init__(self, cfg=None):
        self.cfg = LossConfig() if cfg is None else cfg
        self.phase = 'warmup'
        self.switched_at = None
        self.terms = {}

    def __repr__(self):
        return '<ArlState: {0}>'.format(self.phase)

    def switch(self, epoch=None):
        """Enters the correction phase (idempotent)."""
        if self.phase != 'correction':
            self.phase = 'correction'
            self.switched_at = epoch

    def evaluate(self, batch):
        """
        :func:`arl` in the current phase; the term values are kept in
        ``terms``.

        Returns
        -------
        value : `float`

        gradient : `numpy.ndarray`
        """
        value, gradient, self.terms, _ = arl(batch, self.cfg, self.phase)
        return value, gradient
