# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np

from ..utils.config_base import ConfigBase

__all__ = ['LossConfig', 'PHASES']

PHASES = ('warmup', 'correction')


class LossConfig(ConfigBase):
    """
    Weights of the adaptive robust loss.

    Parameters
    ----------
    lam : `float`, optional
        Weight of the normalized cross entropy. Default is ``100``.

    beta : `float`, optional
        Weight of the mean absolute error. Default is ``1``.

    sigma : `float`, optional
        Change of the cross-entropy weight after the correction; the
        cross entropy is weighted with ``1 + sigma`` then.
        Default is ``-0.99``.

    use_feature_mse : `bool`, optional
        Add the feature alignment term when the batch carries feature pairs.
        Default is ``False``.
    """

    _fields = ('lam', 'beta', 'sigma', 'use_feature_mse')

    def __init__(self, lam=100., beta=1., sigma=-0.99, use_feature_mse=False):
        self.lam = float(lam)
        self.beta = float(beta)
        self.sigma = float(sigma)
        if not np.all(np.isfinite([self.lam, self.beta, self.sigma])):
            raise ValueError('loss weights must be finite.')
        self.use_feature_mse = bool(use_feature_mse)
