# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np

from ..corrector import CorrectorConfig
from ..loss import LossConfig
from ..utils.config_base import ConfigBase

__all__ = ['TrainConfig', 'LOSS_MODES']

LOSS_MODES = ('arl', 'ce')


class TrainConfig(ConfigBase):
    """
    Parameters of the training loop.

    Parameters
    ----------
    epochs : `int`, optional
        Number of epochs ``T``. Default is ``40``.

    lr : `float`, optional
        Peak learning rate of the SGD steps. Default is ``0.05``.

    batch_size : `int`, optional
        Points per SGD step; a batch never mixes samples. Default is
        ``1024``.

    momentum : `float`, optional
        SGD momentum in ``[0, 1)``. Default is ``0.9``.

    hidden : `int`, optional
        Width of the hidden layer. Default is ``64``.

    cosine_restarts : `bool`, optional
        Anneal the learning rate with a cosine that restarts every quarter
        of the epochs. Default is ``True``.

    seed : `int`, optional
        Seed of the initial weights and the batch order. Default is ``0``.

    use_correction : `bool`, optional
        Correct labels during training. Default is ``True``.

    loss_mode : {'arl', 'ce'}, optional
        ``'ce'`` trains with the plain cross entropy in every phase.
        Default is ``'arl'``.

    corrector : `~pyadaco.corrector.CorrectorConfig` or `dict`, optional

    loss : `~pyadaco.loss.LossConfig` or `dict`, optional
    """

    _fields = ('epochs', 'lr', 'batch_size', 'momentum', 'hidden',
               'cosine_restarts', 'seed', 'use_correction', 'loss_mode',
               'corrector', 'loss')

    def __init__(self, epochs=40, lr=0.05, batch_size=1024, momentum=0.9,
                 hidden=64, cosine_restarts=True, seed=0, use_correction=True,
                 loss_mode='arl', corrector=None, loss=None):
        self.epochs = int(epochs)
        if self.epochs < 1:
            raise ValueError('epochs must be at least 1.')
        self.lr = float(lr)
        if not self.lr > 0:
            raise ValueError('lr must be positive, got {0}.'.format(lr))
        self.batch_size = int(batch_size)
        self.hidden = int(hidden)
        if self.batch_size < 1 or self.hidden < 1:
            raise ValueError('batch_size and hidden must be positive.')
        self.momentum = float(momentum)
        if not 0 <= self.momentum < 1:
            raise ValueError('momentum must be in [0, 1).')
        self.cosine_restarts = bool(cosine_restarts)
        self.seed = int(seed)
        self.use_correction = bool(use_correction)
        if loss_mode not in LOSS_MODES:
            raise ValueError('loss_mode must be one of {0}, got {1!r}.'
                             ''.format(LOSS_MODES, loss_mode))
        self.loss_mode = loss_mode
        if corrector is None:
            corrector = CorrectorConfig()
        elif not isinstance(corrector, CorrectorConfig):
            corrector = CorrectorConfig.from_dict(corrector, '[corrector]')
        self.corrector = corrector
        if loss is None:
            loss = LossConfig()
        elif not isinstance(loss, LossConfig):
            loss = LossConfig.from_dict(loss, '[loss]')
        self.loss = loss

    def learning_rate(self, epoch):
        """
        Learning rate of a 1-indexed epoch.
        """
        if not self.cosine_restarts:
            return self.lr
        period = max(1, self.epochs // 4)
        phase = ((epoch - 1) % period) / float(period)
        return 0.5 * self.lr * (1 + np.cos(np.pi * phase))

