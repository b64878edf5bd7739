# Licensed under a 3-clause BSD style license - see LICENSE.rst

import matplotlib
import numpy as np
import pytest

# Plots are only ever written to files.
matplotlib.use('Agg')

try:
    from pytest_astropy_header.display import (PYTEST_HEADER_MODULES,
                                               TESTED_VERSIONS)
except ImportError:
    PYTEST_HEADER_MODULES = {}
    TESTED_VERSIONS = {}


def pytest_configure(config):
    config.addinivalue_line(
        'markers', 'slow: long end-to-end experiments, run with --run-slow')
    config.option.astropy_header = True
    PYTEST_HEADER_MODULES.pop('Pandas', None)
    PYTEST_HEADER_MODULES.pop('h5py', None)
    PYTEST_HEADER_MODULES['numba'] = 'numba'
    from . import __version__
    TESTED_VERSIONS['pyadaco'] = __version__


def pytest_addoption(parser):
    parser.addoption('--run-slow', action='store_true', default=False,
                     help='run the slow end-to-end experiments')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--run-slow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --run-slow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)
