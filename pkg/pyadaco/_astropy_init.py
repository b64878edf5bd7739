# Licensed under a 3-clause BSD style license - see LICENSE.rst

__all__ = ['__version__', 'test']

try:
    from importlib.metadata import version as _version, PackageNotFoundError
    try:
        __version__ = _version('pyadaco')
    except PackageNotFoundError:
        __version__ = ''
except ImportError:
    __version__ = ''


def test(**kwargs):
    """
    Run the tests using `pytest <https://docs.pytest.org>`__.

    Parameters
    ----------
    kwargs :
        Passed to the astropy test runner, e.g. ``package='geometry'`` to
        test a single subpackage or ``args='--run-slow'`` to include the
        end-to-end experiments.
    """
    import os
    from astropy.tests.runner import TestRunner
    runner = TestRunner(os.path.dirname(__file__))
    return runner.run_tests(**kwargs)
