# Licensed under a 3-clause BSD style license - see LICENSE.rst

import os

import numpy as np
from astropy import log

from .config import SynthConfig
from .noise import inject_noise
from ..scene import SampleScene, write_scene
from ..utils.parallel import parallel_map

__all__ = ['generate_scene', 'generate_dataset', 'write_dataset']

# Minimal free space between the footprints of two objects in meters.
_CLEARANCE = 1.5
_PLACEMENT_TRIES = 100


def _sample_box(rng, n):
    half_x, half_y = rng.uniform(0.8, 2.5, 2)
    height = rng.uniform(1.2, 4.)
    # four walls and the roof, sampled proportional to their area
    areas = np.array([2 * half_y * height, 2 * half_y * height,
                      2 * half_x * height, 2 * half_x * height,
                      4 * half_x * half_y])
    face = rng.choice(5, size=n, p=areas / areas.sum())
    s, t = rng.random(n), rng.random(n)
    x = (2 * s - 1) * half_x
    y = (2 * t - 1) * half_y
    z = rng.random(n) * height
    x[face == 0] = -half_x
    x[face == 1] = half_x
    y[face == 2] = -half_y
    y[face == 3] = half_y
    z[face == 4] = height
    return np.column_stack([x, y, z]), np.hypot(half_x, half_y)


def _sample_cylinder(rng, n, radius, height):
    side = 2 * np.pi * radius * height
    top = np.pi * radius ** 2
    on_top = rng.random(n) < top / (side + top)
    angle = rng.uniform(0, 2 * np.pi, n)
    r = np.where(on_top, radius * np.sqrt(rng.random(n)), radius)
    z = np.where(on_top, height, rng.random(n) * height)
    return np.column_stack([r * np.cos(angle), r * np.sin(angle), z]), radius


def _sample_object(rng, shape, n):
    if shape == 'box':
        return _sample_box(rng, n)
    elif shape == 'cylinder':
        return _sample_cylinder(rng, n, rng.uniform(0.8, 1.8),
                                rng.uniform(2., 6.))
    else:
        return _sample_cylinder(rng, n, 0.15, rng.uniform(3., 7.))


def generate_scene(cfg, index):
    """
    Generates one synthetic scene with clean labels.

    The scene is a square ground patch near ``z = 0`` with separated boxes,
    cylinders and thin poles of the object classes standing on it.

    Parameters
    ----------
    cfg : `~pyadaco.synth.SynthConfig`
        The generator configuration.

    index : `int`
        Index of the scene; the id is the index zero-padded to 6 digits.

    Returns
    -------
    scene : `~pyadaco.scene.SampleScene`
        The scene with identity pose. ``clean_labels`` is fully populated
        and ``noisy_labels`` is a copy of it (see
        :func:`~pyadaco.synth.inject_noise`).

    Notes
    -----
    The result depends only on ``(cfg, index)``. Coordinates are rounded to
    float32 so that a written and re-read scene is equal to the generated
    one.
    """
    if not isinstance(cfg, SynthConfig):
        raise TypeError('cfg must be a SynthConfig.')
    rng = np.random.default_rng([cfg.rng_seed, index])
    ground = cfg.classes.index('ground')
    half = cfg.ground_extent / 2

    ground_points = np.column_stack([
        rng.uniform(-half, half, cfg.ground_points),
        rng.uniform(-half, half, cfg.ground_points),
        rng.normal(0, 0.02, cfg.ground_points)])
    points = [ground_points]
    labels = [np.full(cfg.ground_points, ground, dtype=np.int64)]

    object_classes = cfg.object_classes
    n_objects = rng.integers(cfg.objects_per_scene[0],
                             cfg.objects_per_scene[1] + 1)
    placed = []
    for _ in range(n_objects):
        cls = object_classes[rng.integers(len(object_classes))]
        n = rng.integers(cfg.points_per_object[0],
                         cfg.points_per_object[1] + 1)
        local, radius = _sample_object(rng, cfg.shape_of(cls), n)
        limit = half - radius
        if limit <= 0:
            continue
        for _ in range(_PLACEMENT_TRIES):
            center = rng.uniform(-limit, limit, 2)
            if all(np.hypot(*(center - other)) > radius + r + _CLEARANCE
                   for other, r in placed):
                break
        else:
            log.debug('scene {0}: no free space for an object of class {1}.'
                      ''.format(index, cfg.classes.name(cls)))
            continue
        placed.append((center, radius))
        local[:, :2] += center
        points.append(local)
        labels.append(np.full(n, cls, dtype=np.int64))

    points = np.concatenate(points).astype(np.float32).astype(np.float64)
    labels = np.concatenate(labels)
    return SampleScene('{0:06d}'.format(index), points, labels, cfg.classes,
                       clean_labels=labels)


def _noisy_scene(cfg, index):
    scene = generate_scene(cfg, index)
    if cfg.noise.is_clean:
        return scene
    return inject_noise(scene, cfg.noise, [cfg.rng_seed, index, 1])


def generate_dataset(cfg, threads=1):
    """
    Generates ``cfg.n_scenes`` scenes with the configured noise.

    Parameters
    ----------
    cfg : `~pyadaco.synth.SynthConfig`
        The generator configuration.

    threads : `int`, optional
        Worker threads. Default is ``1``.

    Returns
    -------
    scenes : `list` of `~pyadaco.scene.SampleScene`
        Scene ``i`` has noise seeded with ``(cfg.rng_seed, i, 1)``.
    """
    return parallel_map(lambda index: _noisy_scene(cfg, index),
                        range(cfg.n_scenes), threads)


def write_dataset(cfg, directory, threads=1):
    """
    Generates a dataset and writes it as ``<directory>/scenes/<id>/``.

    Returns
    -------
    scenes : `list` of `~pyadaco.scene.SampleScene`
        The generated scenes.
    """
    scenes = generate_dataset(cfg, threads)
    for scene in scenes:
        write_scene(scene, os.path.join(directory, 'scenes', scene.id))
    log.info('wrote {0} synthetic scenes to {1}.'.format(len(scenes),
                                                          directory))
    return scenes
