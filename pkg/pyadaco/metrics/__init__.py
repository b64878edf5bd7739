# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
Segmentation metrics, label audits and reports.
"""

from .confusion import *
from .report import *
