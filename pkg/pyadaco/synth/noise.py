# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np
from scipy.spatial import cKDTree

from .config import NoiseSpec
from ..scene import UNLABELED

__all__ = ['inject_noise', 'boundary_partners']


def boundary_partners(points, labels, band):
    """
    Nearest differently labeled neighbor of every point.

    Parameters
    ----------
    points : `numpy.ndarray`
        Shape ``(N, 3)``.

    labels : `numpy.ndarray`
        Shape ``(N,)``. Unlabeled points are neither boundary points nor
        partners.

    band : `float`
        Maximal distance in meters.

    Returns
    -------
    partner : `numpy.ndarray`
        Index of the nearest point within ``band`` with another label, or
        ``-1``.
    """
    n = points.shape[0]
    partner = np.full(n, -1, dtype=np.int64)
    if n < 2 or band <= 0:
        return partner
    labels = np.asarray(labels)
    labeled = np.flatnonzero(labels != UNLABELED)
    neighbors = cKDTree(points).query_ball_point(points[labeled], band)
    for i, found in zip(labeled, neighbors):
        found = np.asarray(found, dtype=np.int64)
        found = found[(labels[found] != labels[i]) &
                      (labels[found] != UNLABELED)]
        if found.size:
            distance = np.linalg.norm(points[found] - points[i], axis=1)
            # lowest index among equally near partners
            order = np.lexsort((found, distance))
            partner[i] = found[order[0]]
    return partner


def inject_noise(scene, spec, seed):
    """
    Derives noisy labels from the clean labels of a scene.

    Parameters
    ----------
    scene : `~pyadaco.scene.SampleScene`
        Must have clean labels.

    spec : `~pyadaco.synth.NoiseSpec`
        The noise processes.

    seed : `int` or sequence of `int`
        Seed of `numpy.random.default_rng`.

    Returns
    -------
    noisy_scene : `~pyadaco.scene.SampleScene`
        Copy of the scene with new ``noisy_labels``. Coordinates and clean
        labels are unchanged.

    Raises
    ------
    ValueError
        If the scene has no clean labels or the confusion matrix does not
        match the number of classes.

    Notes
    -----
    The processes act on the clean label of every point, with the priority
    unlabeled over symmetric over boundary:

    - boundary: a point within ``boundary_band`` of a differently labeled
      point takes the label of the nearest such point with probability
      ``boundary_rate``.
    - symmetric: with probability ``symmetric_rate`` the label becomes a
      uniformly drawn different class (or a draw from the confusion row).
    - unlabeled: with probability ``unlabeled_rate`` the label is dropped.

    All random numbers are drawn for every point regardless of the rates, so
    changing one rate does not reshuffle the others.
    """
    if scene.clean_labels is None:
        raise ValueError('scene {0} has no clean labels to add noise to.'
                         ''.format(scene.id))
    if not isinstance(spec, NoiseSpec):
        spec = NoiseSpec.from_dict(spec)
    k = scene.num_classes
    if spec.confusion is not None and spec.confusion.shape[0] != k:
        raise ValueError('confusion matrix is {0}x{0} for K={1}.'.format(
            spec.confusion.shape[0], k))

    rng = np.random.default_rng(seed)
    n = scene.n_points
    clean = scene.clean_labels
    draw_symmetric = rng.random(n)
    offsets = rng.integers(1, k, n)
    draw_confusion = rng.random(n)
    draw_boundary = rng.random(n)
    draw_unlabeled = rng.random(n)

    labeled = clean != UNLABELED
    noisy = clean.copy()

    partner = boundary_partners(scene.points, clean, spec.boundary_band)
    boundary = (partner >= 0) & (draw_boundary < spec.boundary_rate)
    noisy[boundary] = clean[partner[boundary]]

    symmetric = labeled & (draw_symmetric < spec.symmetric_rate)
    if spec.confusion is None:
        noisy[symmetric] = (clean[symmetric] + offsets[symmetric]) % k
    else:
        cumulative = np.cumsum(spec.confusion, axis=1)
        rows = cumulative[clean[symmetric]]
        new = (rows <= draw_confusion[symmetric, None]).sum(axis=1)
        noisy[symmetric] = np.minimum(new, k - 1)

    noisy[draw_unlabeled < spec.unlabeled_rate] = UNLABELED
    return scene.with_noisy_labels(noisy)
