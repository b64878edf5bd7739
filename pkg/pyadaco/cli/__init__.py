# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
The ``adaco`` command line interface.
"""

from .config import *
from .main import *
