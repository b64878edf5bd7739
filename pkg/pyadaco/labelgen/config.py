# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np

from .unproject import UNPROJECT_MODES
from .voxel import VOXEL_SIZE_KITTI
from ..utils.config_base import ConfigBase

__all__ = ['LabelgenConfig']


class LabelgenConfig(ConfigBase):
    """
    Parameters of the point label generation.

    Parameters
    ----------
    voxel_size : `float`, optional
        Voxel edge in meters. Default is `VOXEL_SIZE_KITTI`.

    adjacency : `int`, optional
        Neighbor frames on each side voting in a voxel. Default is ``2``.

    mode : {'all', 'nearest'}, optional
        Unprojection mode. Default is ``'all'``.

    dictionary : `str`, optional
        Built-in dictionary name or JSON file mapping descriptions of
        segments to classes. Default is ``'semantickitti'``.
    """

    _fields = ('voxel_size', 'adjacency', 'mode', 'dictionary')

    def __init__(self, voxel_size=VOXEL_SIZE_KITTI, adjacency=2, mode='all',
                 dictionary='semantickitti'):
        self.voxel_size = float(voxel_size)
        if not (np.isfinite(self.voxel_size) and self.voxel_size > 0):
            raise ValueError('voxel_size must be positive, got {0}.'.format(
                voxel_size))
        self.adjacency = int(adjacency)
        if self.adjacency < 0:
            raise ValueError('adjacency must be non-negative.')
        if mode not in UNPROJECT_MODES:
            raise ValueError('mode must be one of {0}, got {1!r}.'.format(
                UNPROJECT_MODES, mode))
        self.mode = mode
        self.dictionary = str(dictionary)
