# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np

from ..geometry import neighbor_counts

__all__ = ['featurize', 'FEATURE_NAMES', 'NEIGHBOR_RADIUS',
           'CLUSTER_SIZE_EDGES']

FEATURE_NAMES = ('x', 'y', 'z', 'height', 'neighbors', 'cluster_size')

NEIGHBOR_RADIUS = 0.6

# bucket 0 holds ground and unclustered points
CLUSTER_SIZE_EDGES = (1, 10, 30, 100, 300, 1000, 3000)


def featurize(scene, geometry):
    """
    Handcrafted per-point features.

    Parameters
    ----------
    scene : `~pyadaco.scene.SampleScene`

    geometry : `~pyadaco.corrector.SceneGeometry`
        Ground model and clusters of the scene.

    Returns
    -------
    features : `numpy.ndarray`
        ``(N, 6)`` with the columns of `FEATURE_NAMES`: the coordinates,
        the height above the ground plane, the number of points within
        `NEIGHBOR_RADIUS` (the point included) and the bucket of the size
        of the point's cluster along `CLUSTER_SIZE_EDGES`.
    """
    points = scene.points
    sizes = np.zeros(scene.n_points, dtype=np.float64)
    clustered = geometry.clusters.assignment >= 0
    sizes[clustered] = geometry.clusters.sizes[
        geometry.clusters.assignment[clustered]]
    bucket = np.where(clustered,
                      np.digitize(sizes, CLUSTER_SIZE_EDGES), 0)
    return np.column_stack([points,
                            geometry.height(points),
                            neighbor_counts(points, NEIGHBOR_RADIUS),
                            bucket]).astype(np.float64)
