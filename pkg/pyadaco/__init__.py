# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
Label-free 3D semantic segmentation with adaptive noise correction.

Cross-modal pseudo labels are unprojected from 2D label maps onto point
clouds and refined by inter-frame voxel voting, then corrected during
training: each sample's learning curve is fitted to find the epoch where
it stops learning clean structure, and at that epoch its labels are
refurbished from consistent past predictions propagated over DBSCAN
clusters. Training switches to a robust loss for corrected samples.
"""

# Affiliated packages may add whatever they like to this file, but
# should keep this content at the top.
# ----------------------------------------------------------------------------
from ._astropy_init import *
# ----------------------------------------------------------------------------

from astropy import config as _config


class Conf(_config.ConfigNamespace):
    """
    Configuration parameters for `pyadaco`.
    """
    threads = _config.ConfigItem(
        1,
        'Default number of worker threads for per-sample and per-block '
        'work. Overridden by the PYADACO_THREADS environment variable and '
        'the --threads flag.')
    plot_format = _config.ConfigItem(
        'svg',
        'File format of the learning-curve plots written by the report.')


conf = Conf()

from . import utils
from . import scene
from . import synth
from . import labelgen
from . import geometry
from . import curvefit
from . import history
from . import corrector
from . import loss
from . import trainer
from . import metrics
from . import cli
