# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np

__all__ = ['partition_blocks']


def _windows(values, block, stride):
    """
    Window memberships along one axis as list of boolean masks.
    """
    lower = values.min()
    extent = values.max() - lower
    offset = values - lower
    if stride == block:
        count = max(1, int(np.ceil(extent / block)))
        cell = np.minimum(np.floor(offset / block).astype(np.int64),
                          count - 1)
        return [cell == i for i in range(count)]
    count = max(1, int(np.ceil((extent - block) / stride)) + 1)
    masks = []
    for i in range(count):
        start = i * stride
        if i == count - 1:
            masks.append(offset >= start)
        else:
            masks.append((offset >= start) & (offset < start + block))
    return masks


def partition_blocks(points, block=10., stride=None):
    """
    Splits points into axis-aligned x/y blocks with unbounded z.

    Parameters
    ----------
    points : `numpy.ndarray`
        ``(N, 3)`` points.

    block : `float`, optional
        Block edge length in meters. Default is ``10``.

    stride : `float` or ``None``, optional
        Distance between block origins. ``None`` means ``block``, then the
        blocks are a partition of the points. A smaller stride gives
        overlapping blocks. Default is ``None``.

    Returns
    -------
    subsets : `list` of `numpy.ndarray`
        Sorted point indices of every non-empty block, ordered by the x then
        the y position of the block.

    Raises
    ------
    ValueError
        If ``block`` or ``stride`` is not positive.

    Notes
    -----
    The windows start at the minimum coordinate. The last window along an
    axis includes the maximum coordinate, so with ``stride <= block`` every
    point is in at least one block.
    """
    if stride is None:
        stride = block
    block = float(block)
    stride = float(stride)
    if not block > 0 or not stride > 0:
        raise ValueError('block and stride must be positive.')
    points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    if points.shape[0] == 0:
        return []
    subsets = []
    rows = _windows(points[:, 1], block, stride)
    for column in _windows(points[:, 0], block, stride):
        for row in rows:
            index = np.flatnonzero(column & row)
            if index.size:
                subsets.append(index)
    return subsets
