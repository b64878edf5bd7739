# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
Directory layout of the views of a frame::

    <maps>/<id>/<view>.map                 label grid, see
                                           `~pyadaco.scene.read_labelmap`
    <maps>/<id>/<view>.json                its calibration
    <maps>/<id>/<view>.descriptions.json   optional

Without descriptions the grid holds class indices. With descriptions the
grid holds segment ids (65535 outside every segment) and the descriptions
file maps segment ids to a description or a ranked list of descriptions;
the segments are classified with the label dictionary.
"""

import os

import numpy as np
from astropy import log

from .config import LabelgenConfig
from .dictionary import labelmap_from_segments
from .voxel import FrameSequence, unproject_sequence, voxel_vote
from ..scene import read_labelmap, UNLABELED
from ..utils.json_io import json_read

__all__ = ['read_views', 'generate_labels', 'MAP_EXTENSION']

MAP_EXTENSION = '.map'
_DESCRIPTIONS = '.descriptions.json'


def read_views(directory, dictionary):
    """
    Reads the views of one frame in name order.

    Parameters
    ----------
    directory : `str`
        The view directory of the frame. A missing directory means no
        views.

    dictionary : `~pyadaco.labelgen.LabelDictionary`
        Classifies segment views and gives the class count.

    Returns
    -------
    maps : `list` of `~pyadaco.scene.LabelMap2D`
    """
    if not os.path.isdir(directory):
        return []
    k = dictionary.vocabulary.K
    maps = []
    for name in sorted(os.listdir(directory)):
        if not name.endswith(MAP_EXTENSION):
            continue
        filename = os.path.join(directory, name)
        base = filename[:-len(MAP_EXTENSION)]
        if os.path.isfile(base + _DESCRIPTIONS):
            grid = read_labelmap(filename)
            segments = np.where(grid.labels == UNLABELED, -1, grid.labels)
            descriptions = {int(key): value for key, value
                            in json_read(base + _DESCRIPTIONS).items()}
            maps.append(labelmap_from_segments(segments, descriptions,
                                               dictionary, grid.camera))
        else:
            maps.append(read_labelmap(filename, k))
    return maps


def generate_labels(scenes, maps, cfg=None, threads=1):
    """
    Point labels of consecutive frames from their views.

    Every frame is labeled by unprojecting its views; the labels are then
    refined by voxel votes of the adjacent frames.

    Parameters
    ----------
    scenes : `list` of `~pyadaco.scene.SampleScene`
        The frames in temporal order.

    maps : `list` of `list` of `~pyadaco.scene.LabelMap2D`
        The views per frame.

    cfg : `LabelgenConfig` or ``None``, optional
        Default is the default configuration.

    threads : `int`, optional
        Default is ``1``.

    Returns
    -------
    scenes : `list` of `~pyadaco.scene.SampleScene`
        The frames with the refined labels as noisy labels.
    """
    if cfg is None:
        cfg = LabelgenConfig()
    seq = unproject_sequence(FrameSequence(scenes, maps, cfg.adjacency),
                             cfg.mode, threads)
    refined = voxel_vote(seq, cfg.voxel_size, threads)
    labeled = sum(int(np.count_nonzero(labels != UNLABELED))
                  for labels in refined)
    total = sum(scene.n_points for scene in scenes)
    log.info('labeled {0} of {1} points in {2} frames.'.format(
        labeled, total, len(scenes)))
    return [scene.with_noisy_labels(labels)
            for scene, labels in zip(seq.scenes, refined)]
