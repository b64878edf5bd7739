#!/usr/bin/env python
# Licensed under a 3-clause BSD style license - see LICENSE.rst

from setuptools import setup

# The metadata, dependencies and entry points are declared in setup.cfg.
setup()
