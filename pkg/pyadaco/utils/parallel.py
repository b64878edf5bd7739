# Licensed under a 3-clause BSD style license - see LICENSE.rst

import os
from concurrent.futures import ThreadPoolExecutor

__all__ = ['parallel_map', 'default_threads']


def default_threads():
    """
    The default number of worker threads.

    Taken from the ``PYADACO_THREADS`` environment variable if set, otherwise
    from ``pyadaco.conf.threads``.
    """
    env = os.environ.get('PYADACO_THREADS')
    if env:
        try:
            threads = int(env)
        except ValueError:
            raise ValueError('PYADACO_THREADS must be an integer, got {0!r}.'
                             ''.format(env))
    else:
        from .. import conf
        threads = int(conf.threads)
    return max(1, threads)


def parallel_map(func, items, threads=1):
    """
    Applies ``func`` to every item, optionally on a thread pool.

    Parameters
    ----------
    func : callable
        Called with one item.

    items : iterable
        The inputs.

    threads : `int`, optional
        Maximum number of worker threads. ``1`` runs in the calling thread.
        Default is ``1``.

    Returns
    -------
    results : `list`
        ``func(item)`` for every item, in input order regardless of the
        completion order.

    Notes
    -----
    The numba kernels used by the geometry and curve fitting modules release
    the GIL, so threads give real parallelism for them.
    """
    items = list(items)
    if threads is None or threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as pool:
        return list(pool.map(func, items))
