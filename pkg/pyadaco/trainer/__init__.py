# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
A small per-point perceptron over handcrafted point features, trained by
SGD with the adaptive robust loss and adaptive noise correction.
"""

from .config import *
from .features import *
from .model import *
from .train import *
from .output import *
