# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np

from ..scene import UNLABELED, check_labels

__all__ = ['project_view', 'unproject_labels', 'UNPROJECT_MODES']

UNPROJECT_MODES = ('all', 'nearest')


def project_view(points, labelmap, num_classes, mode='all'):
    """
    Labels that one view assigns to points.

    Parameters
    ----------
    points : `numpy.ndarray`
        ``(N, 3)`` points in the sample frame.

    labelmap : `~pyadaco.scene.LabelMap2D`
        The view.

    num_classes : `int`
        ``K``, the label map is checked against it.

    mode : {'all', 'nearest'}, optional
        ``'all'`` labels every point projecting into the image.
        ``'nearest'`` only the point with the smallest depth per pixel.
        Default is ``'all'``.

    Returns
    -------
    labels : `numpy.ndarray`
        The pixel label per point or `~pyadaco.scene.UNLABELED`.
    """
    if mode not in UNPROJECT_MODES:
        raise ValueError('mode must be one of {0}, got {1!r}.'.format(
            UNPROJECT_MODES, mode))
    check_labels(labelmap.labels.ravel(), num_classes, 'label map')
    n = points.shape[0]
    labels = np.full(n, UNLABELED, dtype=np.int64)
    if n == 0:
        return labels
    u, v, z = labelmap.camera.project(points)
    with np.errstate(invalid='ignore'):
        inside = ((z > 0) & (u >= 0) & (u < labelmap.width) &
                  (v >= 0) & (v < labelmap.height))
    index = np.flatnonzero(inside)
    column = np.floor(u[index]).astype(np.int64)
    row = np.floor(v[index]).astype(np.int64)
    if mode == 'nearest' and index.size:
        pixel = row * labelmap.width + column
        order = np.lexsort((z[index], pixel))
        _, first = np.unique(pixel[order], return_index=True)
        keep = order[first]
        index, row, column = index[keep], row[keep], column[keep]
    labels[index] = labelmap.labels[row, column]
    return labels


def unproject_labels(scene, maps, mode='all'):
    """
    Back-projects 2D label maps of several views onto the points of a scene.

    Parameters
    ----------
    scene : `~pyadaco.scene.SampleScene`
        The points.

    maps : `list` of `~pyadaco.scene.LabelMap2D`
        The views. Their extrinsics map the sample frame to the camera frame.

    mode : {'all', 'nearest'}, optional
        See :func:`project_view`. Default is ``'all'``.

    Returns
    -------
    labels : `numpy.ndarray`
        ``(N,)`` class indices. A point seen in several views takes the
        class that most views assign, ties going to the class seen by the
        earliest view. Points outside every view or only on unlabeled
        pixels are `~pyadaco.scene.UNLABELED`.

    Notes
    -----
    A point projects to pixel ``(floor(u), floor(v))`` with
    ``u = fx x / z + cx`` and ``v = fy y / z + cy`` in camera coordinates,
    provided ``z > 0``, ``0 <= u < W`` and ``0 <= v < H``. There is no
    occlusion handling in the default mode.
    """
    n = scene.n_points
    k = scene.num_classes
    counts = np.zeros((n, k), dtype=np.int64)
    first_view = np.full((n, k), len(maps), dtype=np.int64)
    for view, labelmap in enumerate(maps):
        labels = project_view(scene.points, labelmap, k, mode)
        hit = np.flatnonzero(labels != UNLABELED)
        np.add.at(counts, (hit, labels[hit]), 1)
        np.minimum.at(first_view, (hit, labels[hit]), view)

    result = np.full(n, UNLABELED, dtype=np.int64)
    if n == 0 or not maps:
        return result
    best = counts.max(axis=1)
    seen = best > 0
    # among the most voted classes the one with the earliest view
    order = np.where(counts == best[:, None], first_view, len(maps) + 1)
    result[seen] = np.argmin(order[seen], axis=1)
    return result
