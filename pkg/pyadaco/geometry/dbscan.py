# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np
from astropy import log
from numba import jit

from .blocks import partition_blocks
from ..utils.parallel import parallel_map

__all__ = ['ClusterSet', 'dbscan', 'neighbor_counts', 'cluster_scene']


class ClusterSet(object):
    """
    Cluster id of every point.

    Parameters
    ----------
    assignment : `numpy.ndarray`
        ``(N,)`` ids in ``[0, m)``, `NOISE` for unclustered points and
        `GROUND` for points excluded as ground.

    m : `int` or ``None``, optional
        Number of clusters. Computed if ``None``. Default is ``None``.

    Raises
    ------
    ValueError
        If the ids are not dense in ``[0, m)``.
    """

    NOISE = -1
    GROUND = -2

    def __init__(self, assignment, m=None):
        assignment = np.array(assignment, dtype=np.int64).ravel()
        if np.any(assignment < self.GROUND):
            raise ValueError('cluster ids must be >= {0}.'.format(self.GROUND))
        present = np.unique(assignment[assignment >= 0])
        if m is None:
            m = present.size
        if present.size != m or (m and present[-1] != m - 1):
            raise ValueError('cluster ids must be dense in [0, {0}).'.format(
                m))
        assignment.setflags(write=False)
        self.assignment = assignment
        self.m = int(m)

    def __repr__(self):
        return '<ClusterSet: {0} clusters over {1} points>'.format(
            self.m, self.assignment.shape[0])

    def __len__(self):
        return self.m

    @property
    def sizes(self):
        """(`numpy.ndarray`) Number of points per cluster."""
        return np.bincount(self.assignment[self.assignment >= 0],
                           minlength=self.m)

    def clusters(self):
        """
        Point indices of every cluster.

        Returns
        -------
        members : `list` of `numpy.ndarray`
            Sorted indices, one array per cluster id.
        """
        clustered = np.flatnonzero(self.assignment >= 0)
        order = clustered[np.argsort(self.assignment[clustered],
                                     kind='stable')]
        bounds = np.cumsum(self.sizes)[:-1]
        return np.split(order, bounds) if self.m else []

    def members(self, cluster):
        """Sorted point indices of one cluster."""
        return np.flatnonzero(self.assignment == cluster)


def _grid(points, cell):
    lower = points.min(axis=0)
    cells = np.floor((points - lower) / cell).astype(np.int64)
    dims = cells.max(axis=0) + 1
    keys = (cells[:, 0] * dims[1] + cells[:, 1]) * dims[2] + cells[:, 2]
    order = np.argsort(keys, kind='stable')
    cell_keys, starts, counts = np.unique(keys[order], return_index=True,
                                          return_counts=True)
    return (cells, dims, order, cell_keys, starts.astype(np.int64),
            (starts + counts).astype(np.int64))


@jit(nopython=True, nogil=True, cache=True)
def _neighbor_pass(points, cells, dims, order, cell_keys, starts, ends,
                   radius2, indptr, indices, fill):
    n = points.shape[0]
    counts = np.zeros(n, dtype=np.int64)
    for i in range(n):
        written = 0
        for dx in range(-1, 2):
            cx = cells[i, 0] + dx
            if cx < 0 or cx >= dims[0]:
                continue
            for dy in range(-1, 2):
                cy = cells[i, 1] + dy
                if cy < 0 or cy >= dims[1]:
                    continue
                for dz in range(-1, 2):
                    cz = cells[i, 2] + dz
                    if cz < 0 or cz >= dims[2]:
                        continue
                    key = (cx * dims[1] + cy) * dims[2] + cz
                    pos = np.searchsorted(cell_keys, key)
                    if pos >= cell_keys.shape[0] or cell_keys[pos] != key:
                        continue
                    for s in range(starts[pos], ends[pos]):
                        j = order[s]
                        ddx = points[i, 0] - points[j, 0]
                        ddy = points[i, 1] - points[j, 1]
                        ddz = points[i, 2] - points[j, 2]
                        if ddx * ddx + ddy * ddy + ddz * ddz <= radius2:
                            if fill:
                                indices[indptr[i] + written] = j
                            written += 1
        counts[i] = written
    return counts


@jit(nopython=True, nogil=True, cache=True)
def _expand_clusters(indptr, indices, core):
    n = core.shape[0]
    labels = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    m = 0
    for i in range(n):
        if labels[i] != -1 or not core[i]:
            continue
        labels[i] = m
        head = 0
        tail = 1
        queue[0] = i
        while head < tail:
            p = queue[head]
            head += 1
            for s in range(indptr[p], indptr[p + 1]):
                q = indices[s]
                if labels[q] == -1:
                    labels[q] = m
                    if core[q]:
                        queue[tail] = q
                        tail += 1
        m += 1
    return labels, m


def _neighbors(points, radius, fill):
    grid = _grid(points, radius)
    empty = np.empty(0, dtype=np.int64)
    counts = _neighbor_pass(points, grid[0], grid[1], grid[2], grid[3],
                            grid[4], grid[5], radius * radius, empty, empty,
                            False)
    if not fill:
        return counts, None, None
    indptr = np.zeros(points.shape[0] + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    indices = np.empty(indptr[-1], dtype=np.int64)
    _neighbor_pass(points, grid[0], grid[1], grid[2], grid[3], grid[4],
                   grid[5], radius * radius, indptr, indices, True)
    return counts, indptr, indices


def _as_points(points):
    return np.ascontiguousarray(np.asarray(points, dtype=np.float64)
                                .reshape(-1, 3))


def neighbor_counts(points, radius):
    """
    Number of points within ``radius`` of every point, itself included.

    Parameters
    ----------
    points : `numpy.ndarray`
        ``(N, 3)`` points.

    radius : `float`
        Positive radius in meters.

    Returns
    -------
    counts : `numpy.ndarray`
        ``(N,)`` int64, at least 1.
    """
    if not radius > 0:
        raise ValueError('radius must be positive.')
    points = _as_points(points)
    if points.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    return _neighbors(points, float(radius), False)[0]


def dbscan(points, eps=0.6, min_pts=5):
    """
    Density-based clustering (DBSCAN) accelerated by a uniform grid.

    Parameters
    ----------
    points : `numpy.ndarray`
        ``(N, 3)`` points.

    eps : `float`, optional
        Neighborhood radius in meters. Default is ``0.6``.

    min_pts : `int`, optional
        A point is a core point if at least ``min_pts`` points (itself
        included) lie within ``eps``. Default is ``5``.

    Returns
    -------
    clusters : `ClusterSet`
        Clusters are the maximal density-connected sets, numbered in the
        order of their lowest core point. A border point reachable from
        several clusters joins the first one. Other points are
        `ClusterSet.NOISE`.

    Raises
    ------
    ValueError
        If ``eps`` is not positive or ``min_pts < 1``.

    Notes
    -----
    The grid has cells of edge ``eps`` so the neighbors of a point are
    in the 27 cells around it. Neighbor search and region growing are
    compiled with numba and release the GIL.
    """
    if not eps > 0:
        raise ValueError('eps must be positive.')
    if min_pts < 1:
        raise ValueError('min_pts must be at least 1.')
    points = _as_points(points)
    if points.shape[0] == 0:
        return ClusterSet(np.zeros(0, dtype=np.int64), 0)
    counts, indptr, indices = _neighbors(points, float(eps), True)
    labels, m = _expand_clusters(indptr, indices, counts >= min_pts)
    return ClusterSet(labels, m)


def cluster_scene(points, ground, eps=0.6, min_pts=5, block=10.,
                  stride=None, threads=1):
    """
    Clusters the non-ground points of a scene block by block.

    Parameters
    ----------
    points : `numpy.ndarray`
        ``(N, 3)`` points.

    ground : `numpy.ndarray`
        ``(N,)`` boolean ground mask, e.g. the inliers of
        :func:`~pyadaco.geometry.fit_ground`.

    eps, min_pts : optional
        DBSCAN parameters, see :func:`dbscan`.

    block, stride : optional
        Block partition of the non-ground points, see
        :func:`~pyadaco.geometry.partition_blocks`.

    threads : `int`, optional
        Blocks are clustered in parallel. Default is ``1``.

    Returns
    -------
    clusters : `ClusterSet`
        Ground points are `ClusterSet.GROUND`. Clusters of different blocks
        are never merged; the ids are dense and ordered by block.

    Notes
    -----
    With overlapping blocks (``stride < block``) a point keeps the first
    cluster it was assigned to.
    """
    points = _as_points(points)
    ground = np.asarray(ground, dtype=bool)
    if ground.shape != (points.shape[0],):
        raise ValueError('the ground mask must have one entry per point.')
    assignment = np.full(points.shape[0], ClusterSet.NOISE, dtype=np.int64)
    assignment[ground] = ClusterSet.GROUND
    candidates = np.flatnonzero(~ground)
    subsets = [candidates[subset] for subset in
               partition_blocks(points[candidates], block, stride)]
    results = parallel_map(lambda subset: dbscan(points[subset], eps,
                                                 min_pts),
                           subsets, threads)
    offset = 0
    for subset, clusters in zip(subsets, results):
        local = clusters.assignment
        free = (assignment[subset] == ClusterSet.NOISE) & (local >= 0)
        assignment[subset[free]] = local[free] + offset
        offset += clusters.m
    # dense ids after overlaps
    clustered = assignment >= 0
    _, dense = np.unique(assignment[clustered], return_inverse=True)
    assignment[clustered] = dense.ravel()
    result = ClusterSet(assignment)
    log.debug('{0} clusters in {1} blocks over {2} non-ground points.'.format(
        result.m, len(subsets), candidates.size))
    return result
