# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
Per-point prediction histories, their confidence and the reliable labels.
"""

from .history import *
