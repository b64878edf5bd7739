# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np
from astropy import log

from ..utils.exceptions import GroundFitError

__all__ = ['GroundModel', 'fit_ground']


class GroundModel(object):
    """
    Ground plane ``normal . p + offset = 0``.

    Parameters
    ----------
    normal : 3-vector
        Unit normal, oriented so that its first non-zero component along
        ``(z, y, x)`` is positive (up for a horizontal plane).

    offset : `float`
        The plane offset in meters.

    inlier_tol : `float`
        Maximal absolute distance of ground points in meters.

    Raises
    ------
    ValueError
        If the normal does not have unit length within ``1e-9``.
    """

    def __init__(self, normal, offset, inlier_tol):
        normal = np.array(normal, dtype=np.float64).reshape(3)
        if abs(np.linalg.norm(normal) - 1) > 1e-9:
            raise ValueError('the normal must have unit length.')
        normal.setflags(write=False)
        self.normal = normal
        self.offset = float(offset)
        self.inlier_tol = float(inlier_tol)

    def __repr__(self):
        return 'GroundModel(normal={0}, offset={1}, inlier_tol={2})'.format(
            self.normal.tolist(), self.offset, self.inlier_tol)

    def height(self, points):
        """
        Signed distance of points to the plane, positive above it.
        """
        points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
        return points.dot(self.normal) + self.offset

    def inliers(self, points):
        """
        Boolean mask of the points within ``inlier_tol`` of the plane.
        """
        return np.abs(self.height(points)) <= self.inlier_tol


def _orient(normal):
    for component in (2, 1, 0):
        if normal[component] != 0:
            return normal if normal[component] > 0 else -normal
    return normal


def _refit(points):
    """Least-squares plane of points, ``None`` if they are collinear."""
    centroid = points.mean(axis=0)
    _, singular, vt = np.linalg.svd(points - centroid, full_matrices=False)
    if singular.size < 3 or not singular[1] > 1e-12 * singular[0]:
        return None
    normal = _orient(vt[2])
    return normal, -normal.dot(centroid)


def fit_ground(points, iterations=200, tol=0.2, seed=0, refit=True):
    """
    Fits the dominant plane of a point cloud with RANSAC.

    Parameters
    ----------
    points : `numpy.ndarray`
        ``(N, 3)`` with ``N >= 3``.

    iterations : `int`, optional
        Number of random triplets. Default is ``200``.

    tol : `float`, optional
        Inlier distance in meters. Default is ``0.2``.

    seed : `int`, optional
        Seed of the triplet draws. Default is ``0``.

    refit : `bool`, optional
        Replace the plane by the least-squares plane of its inliers.
        Default is ``True``.

    Returns
    -------
    model : `GroundModel`
        The plane through the triplet with most inliers (the first one on
        equal counts), refitted to these inliers if ``refit`` is set and
        they are not collinear.

    inliers : `numpy.ndarray`
        Boolean mask of the points within ``tol`` of the returned plane.

    Raises
    ------
    ValueError
        If there are fewer than 3 points or ``iterations`` or ``tol`` are
        not positive.

    GroundFitError
        If every triplet was degenerate (collinear or repeated points).
    """
    points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    n = points.shape[0]
    if n < 3:
        raise ValueError('fitting a plane needs at least 3 points, got {0}.'
                         ''.format(n))
    if iterations < 1 or not tol > 0:
        raise ValueError('iterations and tol must be positive.')
    rng = np.random.default_rng(seed)
    best_count = -1
    best = None
    for _ in range(iterations):
        p0, p1, p2 = points[rng.choice(n, 3, replace=False)]
        normal = np.cross(p1 - p0, p2 - p0)
        norm = np.linalg.norm(normal)
        if norm < 1e-12:
            continue
        normal = _orient(normal / norm)
        offset = -normal.dot(p0)
        count = np.count_nonzero(np.abs(points.dot(normal) + offset) <= tol)
        if count > best_count:
            best_count = count
            best = (normal, offset)
    if best is None:
        raise GroundFitError('all {0} RANSAC triplets were degenerate.'
                             ''.format(iterations))
    if refit:
        near = np.abs(points.dot(best[0]) + best[1]) <= tol
        best = _refit(points[near]) or best
    model = GroundModel(best[0], best[1], tol)
    inliers = model.inliers(points)
    log.debug('ground plane normal {0} offset {1:.3f} with {2} of {3} '
              'points.'.format(np.round(model.normal, 4).tolist(),
                               model.offset, int(inliers.sum()), n))
    return model, inliers
