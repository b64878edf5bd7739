# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np

from ..scene import ClassVocabulary
from ..utils.config_base import ConfigBase

__all__ = ['NoiseSpec', 'SynthConfig', 'DEFAULT_CLASSES', 'SHAPES']

DEFAULT_CLASSES = ('ground', 'car', 'building', 'vegetation', 'pole')
"""Classes of the default synthetic benchmark."""

SHAPES = ('box', 'cylinder', 'pole')
"""Object shapes the scene generator can place."""

_DEFAULT_SHAPES = {'car': 'box', 'truck': 'box', 'building': 'box',
                   'vegetation': 'cylinder', 'trunk': 'cylinder',
                   'pole': 'pole', 'traffic-sign': 'pole'}


def _probability(value, name):
    value = float(value)
    if not 0 <= value <= 1:
        raise ValueError('{0} must be in [0, 1], got {1}.'.format(name, value))
    return value


def _range(value, name, minimum):
    try:
        low, high = (int(v) for v in value)
    except (TypeError, ValueError):
        raise ValueError('{0} must be a pair of integers (low, high), got '
                         '{1!r}.'.format(name, value))
    if low < minimum or high < low:
        raise ValueError('{0} must satisfy {1} <= low <= high, got ({2}, '
                         '{3}).'.format(name, minimum, low, high))
    return (low, high)


class NoiseSpec(ConfigBase):
    """
    Label noise injected into clean synthetic labels.

    Parameters
    ----------
    symmetric_rate : `float`, optional
        Probability ``eta`` that a label is replaced by a uniformly drawn
        different class. Default is ``0``.

    boundary_band : `float`, optional
        Distance in meters to a differently labeled point within which a
        point is a boundary point. Default is ``0``.

    boundary_rate : `float`, optional
        Probability that a boundary point takes the class of its nearest
        differently labeled neighbor. Default is ``0``.

    unlabeled_rate : `float`, optional
        Probability that a label is dropped (set to the unlabeled id).
        Default is ``0``.

    confusion : `numpy.ndarray` or ``None``, optional
        ``K x K`` row-stochastic matrix with zero diagonal. If given, a
        symmetric flip of class ``k`` draws the new class from row ``k``
        instead of uniformly, for asymmetric noise studies.
        Default is ``None``.

    Raises
    ------
    ValueError
        If a probability is outside ``[0, 1]``, the band is negative or the
        confusion matrix is invalid.
    """

    _fields = ('symmetric_rate', 'boundary_band', 'boundary_rate',
               'unlabeled_rate', 'confusion')

    def __init__(self, symmetric_rate=0., boundary_band=0., boundary_rate=0.,
                 unlabeled_rate=0., confusion=None):
        self.symmetric_rate = _probability(symmetric_rate, 'symmetric_rate')
        self.boundary_rate = _probability(boundary_rate, 'boundary_rate')
        self.unlabeled_rate = _probability(unlabeled_rate, 'unlabeled_rate')
        self.boundary_band = float(boundary_band)
        if not self.boundary_band >= 0:
            raise ValueError('boundary_band must be non-negative.')
        if confusion is not None:
            confusion = np.array(confusion, dtype=np.float64)
            if (confusion.ndim != 2 or
                    confusion.shape[0] != confusion.shape[1] or
                    np.any(confusion < 0) or
                    np.any(np.diag(confusion) != 0) or
                    not np.allclose(confusion.sum(axis=1), 1, atol=1e-9)):
                raise ValueError('confusion must be a square row-stochastic '
                                 'matrix with zero diagonal.')
            confusion.setflags(write=False)
        self.confusion = confusion

    @property
    def is_clean(self):
        """(`bool`) ``True`` if no noise process is active."""
        return (self.symmetric_rate == 0 and self.unlabeled_rate == 0 and
                (self.boundary_rate == 0 or self.boundary_band == 0))


class SynthConfig(ConfigBase):
    """
    Parameters of the synthetic scene generator.

    Parameters
    ----------
    n_scenes : `int`, optional
        Number of scenes of a dataset. Default is ``30``.

    classes : iterable of `str` or `~pyadaco.scene.ClassVocabulary`, optional
        Must contain ``"ground"``; every other class is an object class.
        Default is `DEFAULT_CLASSES`.

    objects_per_scene : ``(low, high)``, optional
        Inclusive range of placed objects. Default is ``(4, 8)``.

    points_per_object : ``(low, high)``, optional
        Inclusive range of surface samples per object.
        Default is ``(300, 600)``.

    ground_points : `int`, optional
        Number of ground samples. Default is ``2000``.

    ground_extent : `float`, optional
        Side length in meters of the square ground patch centered on the
        origin. Default is ``40``.

    noise : `NoiseSpec` or `dict`, optional
        The label noise of generated datasets. Default is no noise.

    rng_seed : `int`, optional
        Seed of all random draws. Default is ``0``.

    shapes : `dict` or ``None``, optional
        Mapping of object class name to one of `SHAPES`. Classes without
        entry use a known default (cars and buildings are boxes,
        vegetation cylinders, poles poles) or cycle through `SHAPES`.
        Default is ``None``.
    """

    _fields = ('n_scenes', 'classes', 'objects_per_scene', 'points_per_object',
               'ground_points', 'ground_extent', 'noise', 'rng_seed',
               'shapes')

    def __init__(self, n_scenes=30, classes=DEFAULT_CLASSES,
                 objects_per_scene=(4, 8), points_per_object=(300, 600),
                 ground_points=2000, ground_extent=40., noise=None,
                 rng_seed=0, shapes=None):
        self.n_scenes = int(n_scenes)
        if self.n_scenes < 0:
            raise ValueError('n_scenes must be non-negative.')
        if not isinstance(classes, ClassVocabulary):
            classes = ClassVocabulary(classes)
        if 'ground' not in classes.names:
            raise ValueError('the classes must contain "ground".')
        self.classes = classes
        self.objects_per_scene = _range(objects_per_scene,
                                        'objects_per_scene', 0)
        self.points_per_object = _range(points_per_object,
                                        'points_per_object', 1)
        self.ground_points = int(ground_points)
        if self.ground_points < 1:
            raise ValueError('ground_points must be positive.')
        self.ground_extent = float(ground_extent)
        if not self.ground_extent > 0:
            raise ValueError('ground_extent must be positive.')
        if noise is None:
            noise = NoiseSpec()
        elif not isinstance(noise, NoiseSpec):
            noise = NoiseSpec.from_dict(noise, '[noise]')
        self.noise = noise
        self.rng_seed = int(rng_seed)
        shapes = dict(shapes or {})
        for name, shape in shapes.items():
            if name not in classes.names or shape not in SHAPES:
                raise ValueError('invalid shape {0!r} for class {1!r}.'
                                 ''.format(shape, name))
        self.shapes = shapes

    def to_dict(self):
        result = super(SynthConfig, self).to_dict()
        result['classes'] = list(self.classes.names)
        return result

    @property
    def object_classes(self):
        """(`list` of `int`) Indices of all classes except ground."""
        ground = self.classes.index('ground')
        return [idx for idx in range(self.classes.K) if idx != ground]

    def shape_of(self, class_index):
        """
        The shape of objects of a class.
        """
        name = self.classes.name(class_index)
        if name in self.shapes:
            return self.shapes[name]
        if name in _DEFAULT_SHAPES:
            return _DEFAULT_SHAPES[name]
        return SHAPES[class_index % len(SHAPES)]
