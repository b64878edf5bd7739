# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
Ground removal, block partitioning and density-based clustering.
"""

from .ground import *
from .blocks import *
from .dbscan import *
