# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
Shared domain types: class vocabulary, scenes, 2D label maps, rigid
transformations and the on-disk formats.
"""

from .vocabulary import *
from .transform import *
from .sample import *
from .labelmap import *
from .fileio import *
