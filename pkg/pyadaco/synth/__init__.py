# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
Deterministic synthetic scenes with clean labels and controlled label
noise.
"""

from .config import *
from .noise import *
from .generate import *
