# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np
from astropy import log

from .unproject import unproject_labels
from ..scene import SampleScene, UNLABELED, transform_points, \
    invert_transform
from ..utils.parallel import parallel_map

__all__ = ['FrameSequence', 'voxel_vote', 'voxel_keys', 'unproject_sequence',
           'VOXEL_SIZE_KITTI', 'VOXEL_SIZE_NUSCENES']

VOXEL_SIZE_KITTI = 0.05
VOXEL_SIZE_NUSCENES = 0.1


class FrameSequence(object):
    """
    Consecutive frames of one drive.

    Parameters
    ----------
    scenes : `list` of `~pyadaco.scene.SampleScene`
        The frames in temporal order, each with its pose.

    maps : `list` of `list` of `~pyadaco.scene.LabelMap2D` or ``None``
        The views of each frame. Default is ``None`` (no views).

    adjacency : `int`, optional
        Number of neighbor frames on each side that vote. Default is ``2``.
    """

    def __init__(self, scenes, maps=None, adjacency=2):
        scenes = list(scenes)
        for scene in scenes:
            if not isinstance(scene, SampleScene):
                raise TypeError('frames must be SampleScene instances.')
        if maps is None:
            maps = [[] for _ in scenes]
        maps = [list(views) for views in maps]
        if len(maps) != len(scenes):
            raise ValueError('got {0} view lists for {1} frames.'.format(
                len(maps), len(scenes)))
        adjacency = int(adjacency)
        if adjacency < 0:
            raise ValueError('adjacency must be non-negative.')
        self.scenes = scenes
        self.maps = maps
        self.adjacency = adjacency

    def __len__(self):
        return len(self.scenes)

    @property
    def frames(self):
        """(`list` of `tuple`) ``(scene, views)`` per frame."""
        return list(zip(self.scenes, self.maps))

    def window(self, index):
        """
        Indices of the frames voting for frame ``index``, nearest first.
        """
        lower = max(0, index - self.adjacency)
        upper = min(len(self.scenes), index + self.adjacency + 1)
        return sorted(range(lower, upper), key=lambda j: (abs(j - index), j))

    def with_scenes(self, scenes):
        """A copy with other scenes (same views and adjacency)."""
        return FrameSequence(scenes, self.maps, self.adjacency)


def unproject_sequence(seq, mode='all', threads=1):
    """
    Replaces the labels of every frame by the labels unprojected from its
    views.

    Returns
    -------
    seq : `FrameSequence`
        A new sequence.
    """
    def unproject(frame):
        scene, views = frame
        return scene.with_noisy_labels(unproject_labels(scene, views, mode))
    return seq.with_scenes(parallel_map(unproject, seq.frames, threads))


def _check_voxel_size(voxel_size):
    voxel_size = np.broadcast_to(np.asarray(voxel_size, dtype=np.float64),
                                 (3,))
    if not np.all(voxel_size > 0):
        raise ValueError('voxel sizes must be positive, got {0}.'.format(
            voxel_size))
    return voxel_size


def voxel_keys(points, voxel_size):
    """
    Integer voxel coordinates ``floor(p / size)`` of points.

    Parameters
    ----------
    points : `numpy.ndarray`
        ``(N, 3)``.

    voxel_size : `float` or 3-vector
        Edge length(s) in meters.

    Raises
    ------
    ValueError
        If a size is not positive.
    """
    voxel_size = _check_voxel_size(voxel_size)
    return np.floor(points / voxel_size).astype(np.int64)


def _vote_frame(seq, index, voxel_size):
    scene = seq.scenes[index]
    to_local = invert_transform(scene.pose)
    keys, labels, distances = [], [], []
    for j in seq.window(index):
        other = seq.scenes[j]
        labeled = other.noisy_labels != UNLABELED
        points = other.points[labeled]
        if j != index:
            points = transform_points(points, to_local.dot(other.pose))
        keys.append(voxel_keys(points, voxel_size))
        labels.append(other.noisy_labels[labeled])
        distances.append(np.full(points.shape[0], abs(j - index)))
    own_keys = voxel_keys(scene.points, voxel_size)
    all_keys = np.concatenate(keys + [own_keys])
    n_votes = all_keys.shape[0] - own_keys.shape[0]
    refined = np.full(scene.n_points, UNLABELED, dtype=np.int64)
    if n_votes == 0:
        return refined

    _, voxel = np.unique(all_keys, axis=0, return_inverse=True)
    voxel = voxel.ravel()
    n_voxels = voxel.max() + 1
    vote_voxel = voxel[:n_votes]
    vote_label = np.concatenate(labels)
    vote_distance = np.concatenate(distances)

    k = scene.num_classes
    pairs, pair_of_vote, counts = np.unique(vote_voxel * k + vote_label,
                                            return_inverse=True,
                                            return_counts=True)
    nearest = np.full(pairs.shape[0], np.iinfo(np.int64).max)
    np.minimum.at(nearest, pair_of_vote.ravel(), vote_distance)
    pair_voxel = pairs // k
    pair_label = pairs % k
    # per voxel: most votes, then nearest frame, then lowest class
    order = np.lexsort((pair_label, nearest, -counts, pair_voxel))
    winners, first = np.unique(pair_voxel[order], return_index=True)
    winner = np.full(n_voxels, UNLABELED, dtype=np.int64)
    winner[winners] = pair_label[order][first]
    refined[:] = winner[voxel[n_votes:]]
    return refined


def voxel_vote(seq, voxel_size=VOXEL_SIZE_KITTI, threads=1):
    """
    Refines the labels of every frame by majority votes in voxels filled
    with the labeled points of adjacent frames.

    Parameters
    ----------
    seq : `FrameSequence`
        Frames whose ``noisy_labels`` hold the unprojected labels.

    voxel_size : `float` or 3-vector, optional
        Voxel edge length(s) in meters. Default is `VOXEL_SIZE_KITTI`.

    threads : `int`, optional
        Frames are voted in parallel. Default is ``1``.

    Returns
    -------
    refined : `list` of `numpy.ndarray`
        The refined labels per frame.

    Raises
    ------
    ValueError
        If a voxel size is not positive.

    Notes
    -----
    The labeled points of frame ``j`` are moved into the frame ``i`` with
    ``inv(pose_i) pose_j`` for every ``|i - j| <= adjacency``. Every point
    of frame ``i`` takes the label with most votes in its voxel; ties go to
    the label whose nearest vote comes from the temporally nearest frame,
    remaining ties to the lowest class index. Unlabeled points in a voxel
    with votes adopt the winner; in empty voxels they stay unlabeled.
    """
    voxel_size = _check_voxel_size(voxel_size)
    refined = parallel_map(lambda i: _vote_frame(seq, i, voxel_size),
                           range(len(seq)), threads)
    for scene, labels in zip(seq.scenes, refined):
        changed = np.count_nonzero(labels != scene.noisy_labels)
        log.debug('voxel vote changed {0} of {1} labels of frame {2}.'.format(
            changed, scene.n_points, scene.id))
    return refined
