# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np

from .config import CorrectorConfig
from ..geometry import ClusterSet
from ..history import ReliableSet
from ..scene import UNLABELED
from ..utils.exceptions import LengthMismatchError

__all__ = ['CorrectionReport', 'cluster_frequency', 'winner_label',
           'winner_candidates', 'refurbish_sample', 'apply_full_supervision']


class CorrectionReport(object):
    """
    Summary of one refurbishment.

    Parameters
    ----------
    sample_id : `str`
        The corrected sample.

    t_c : `int` or ``None``
        The correction epoch.

    n_reliable : `int`
        Number of reliable points.

    n_clusters_touched : `int`
        Number of clusters that received a winner label.

    flips : `numpy.ndarray`
        ``(K + 1) x (K + 1)`` counts of old label (rows) to new label
        (columns); index ``K`` stands for unlabeled.
    """

    def __init__(self, sample_id, t_c, n_reliable, n_clusters_touched, flips):
        self.sample_id = str(sample_id)
        self.t_c = None if t_c is None else int(t_c)
        self.n_reliable = int(n_reliable)
        self.n_clusters_touched = int(n_clusters_touched)
        self.flips = np.asarray(flips, dtype=np.int64)

    def __repr__(self):
        return ('<CorrectionReport {0}: t_c={1}, {2} reliable, {3} clusters, '
                '{4} relabeled>'.format(self.sample_id, self.t_c,
                                        self.n_reliable,
                                        self.n_clusters_touched,
                                        self.n_points_relabeled))

    @property
    def n_points_relabeled(self):
        """(`int`) Sum of the off-diagonal flip counts."""
        return int(self.flips.sum() - np.trace(self.flips))

    def to_dict(self):
        return {'sample_id': self.sample_id, 't_c': self.t_c,
                'n_reliable': self.n_reliable,
                'n_clusters_touched': self.n_clusters_touched,
                'n_points_relabeled': self.n_points_relabeled,
                'flips': self.flips.tolist()}

    @classmethod
    def from_dict(cls, d):
        return cls(d['sample_id'], d['t_c'], d['n_reliable'],
                   d['n_clusters_touched'], d['flips'])


def cluster_frequency(cluster, reliable, num_classes):
    """
    Counts the reliable labels inside one cluster.

    Parameters
    ----------
    cluster : array-like
        Point indices of the cluster.

    reliable : `~pyadaco.history.ReliableSet`
        The reliable points of the sample.

    num_classes : `int`
        ``K``.

    Returns
    -------
    counts : `numpy.ndarray`
        ``(K,)`` number of reliable points of the cluster per reliable label.
    """
    inside = np.isin(reliable.indices, np.asarray(cluster, dtype=np.int64))
    return np.bincount(reliable.labels[inside], minlength=num_classes)


def winner_candidates(counts, omega):
    """
    Classes with at least ``max(counts) / omega`` votes (and at least one).
    """
    counts = np.asarray(counts)
    if omega < 1:
        raise ValueError('omega must be at least 1, got {0}.'.format(omega))
    top = counts.max() if counts.size else 0
    if top == 0:
        return np.zeros(0, dtype=np.int64)
    return np.flatnonzero((counts > 0) & (counts * omega >= top))


def winner_label(counts, omega, rng):
    """
    Draws the winner label of a cluster.

    Parameters
    ----------
    counts : array-like
        The frequency vector of the cluster, see :func:`cluster_frequency`.

    omega : `float`
        Winner-fraction divisor, at least 1.

    rng : `numpy.random.Generator`
        Source of the uniform draw among the candidates.

    Returns
    -------
    label : `int` or ``None``
        ``None`` if no reliable point is in the cluster.

    Examples
    --------
    With counts ``(10, 4, 3)`` and ``omega = 3`` the threshold is ``10 / 3``,
    so classes 0 and 1 are candidates and class 2 is not.
    """
    candidates = winner_candidates(counts, omega)
    if candidates.size == 0:
        return None
    if candidates.size == 1:
        return int(candidates[0])
    return int(rng.choice(candidates))


def refurbish_sample(scene, clusters, reliable, cfg=None, rng=None, t_c=None):
    """
    Refurbishes the labels of one sample.

    Parameters
    ----------
    scene : `~pyadaco.scene.SampleScene`
        The sample with its current labels.

    clusters : `~pyadaco.geometry.ClusterSet`
        Clusters of its non-ground points.

    reliable : `~pyadaco.history.ReliableSet`
        Its reliable points.

    cfg : `~pyadaco.corrector.CorrectorConfig` or ``None``, optional
        Default is the default configuration.

    rng : `numpy.random.Generator` or ``None``, optional
        Winner draws. Default is a generator seeded with ``cfg.rng_seed``.

    t_c : `int` or ``None``, optional
        Stored in the report. Default is ``None``.

    Returns
    -------
    scene : `~pyadaco.scene.SampleScene`
        The sample with the refurbished labels.

    report : `CorrectionReport`

    Raises
    ------
    LengthMismatchError
        If the clusters do not cover the points of the scene.

    Notes
    -----
    Every cluster containing reliable points is relabeled as a whole
    (unlabeled members included) with its winner label, clusters taken in
    id order. Reliable points outside clusters take their own reliable
    label; with ``cfg.freeze_ground`` ground points keep their label. All
    other labels are unchanged.
    """
    if cfg is None:
        cfg = CorrectorConfig()
    if rng is None:
        rng = np.random.default_rng(cfg.rng_seed)
    if not isinstance(clusters, ClusterSet):
        raise TypeError('clusters must be a ClusterSet.')
    if not isinstance(reliable, ReliableSet):
        raise TypeError('reliable must be a ReliableSet.')
    n = scene.n_points
    k = scene.num_classes
    assignment = clusters.assignment
    if assignment.shape[0] != n:
        raise LengthMismatchError('{0} cluster ids for {1} points.'.format(
            assignment.shape[0], n))
    if reliable.indices.size and reliable.indices[-1] >= n:
        raise LengthMismatchError('reliable index {0} out of {1} points.'
                                  ''.format(reliable.indices[-1], n))
    old = scene.noisy_labels
    new = old.copy()

    owner = assignment[reliable.indices]
    outside = owner < 0
    if cfg.freeze_ground:
        outside &= owner != ClusterSet.GROUND
    new[reliable.indices[outside]] = reliable.labels[outside]

    inside = owner >= 0
    frequency = np.zeros((clusters.m, k), dtype=np.int64)
    np.add.at(frequency, (owner[inside], reliable.labels[inside]), 1)
    touched = np.flatnonzero(frequency.sum(axis=1) > 0)
    winners = np.full(clusters.m, UNLABELED, dtype=np.int64)
    for cluster in touched:
        winners[cluster] = winner_label(frequency[cluster], cfg.omega, rng)
    members = assignment >= 0
    voted = members.copy()
    voted[members] = winners[assignment[members]] != UNLABELED
    new[voted] = winners[assignment[voted]]

    flips = np.zeros((k + 1, k + 1), dtype=np.int64)
    np.add.at(flips, (np.where(old == UNLABELED, k, old),
                      np.where(new == UNLABELED, k, new)), 1)
    report = CorrectionReport(scene.id, t_c, len(reliable), touched.size,
                              flips)
    return scene.with_noisy_labels(new), report


def apply_full_supervision(scene):
    """
    The labels every point of a sample is trained with: the refurbished
    labels after a correction, the noisy labels before. Unlabeled points are
    left to the ignore rule of the losses.
    """
    return scene.noisy_labels.copy()
