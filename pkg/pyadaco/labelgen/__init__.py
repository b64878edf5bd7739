# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
Point labels from 2D label maps: description lookup, back-projection and
inter-frame voxel voting.
"""

from .dictionary import *
from .unproject import *
from .voxel import *
from .config import *
from .pipeline import *
