# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
Small helpers shared by the pyadaco subpackages.
"""

from .decorator_collection import *
from .exceptions import *
from .json_io import *
from .dict_convenience import *
from .config_base import *
from .parallel import *
from .matplotlib_convenience import *
