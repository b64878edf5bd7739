# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
Loss terms with analytic gradients and the adaptive robust loss.
"""

from .config import *
from .batch import *
from .components import *
from .arl import *
