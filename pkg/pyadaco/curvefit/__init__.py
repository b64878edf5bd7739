# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
Learning-curve fitting and the adaptive correction trigger.
"""

from .curve import *
from .trigger import *
