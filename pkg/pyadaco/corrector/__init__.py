# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
Adaptive noise correction: cluster voting over reliable labels and the
per-sample driver of the training loop.
"""

from .config import *
from .refurbish import *
from .driver import *
