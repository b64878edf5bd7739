# Licensed under a 3-clause BSD style license - see LICENSE.rst

import struct

import numpy as np
from scipy.special import softmax

from ..utils.exceptions import SceneFormatError

__all__ = ['ModelParams', 'init_model', 'predict', 'predict_features',
           'write_checkpoint', 'read_checkpoint', 'CHECKPOINT_MAGIC']

CHECKPOINT_MAGIC = b'ADACOMLP'
_VERSION = 1
_ORDER = ('w1', 'b1', 'w2', 'b2', 'mean', 'scale')


class ModelParams(object):
    """
    Weights of the per-point perceptron ``F -> H -> K`` with a rectified
    hidden layer.

    Parameters
    ----------
    w1, b1 : `numpy.ndarray`
        ``(F, H)`` and ``(H,)``.

    w2, b2 : `numpy.ndarray`
        ``(H, K)`` and ``(K,)``.

    mean, scale : `numpy.ndarray` or ``None``, optional
        Feature standardization ``(x - mean) / scale`` applied before the
        first layer. Default is no standardization.

    Raises
    ------
    ValueError
        If the shapes are inconsistent or a weight is not finite.
    """

    def __init__(self, w1, b1, w2, b2, mean=None, scale=None):
        w1 = np.array(w1, dtype=np.float64)
        w2 = np.array(w2, dtype=np.float64)
        f, h = w1.shape
        k = w2.shape[1]
        mean = np.zeros(f) if mean is None else mean
        scale = np.ones(f) if scale is None else scale
        arrays = {'w1': w1, 'b1': b1, 'w2': w2, 'b2': b2, 'mean': mean,
                  'scale': scale}
        shapes = {'w1': (f, h), 'b1': (h,), 'w2': (h, k), 'b2': (k,),
                  'mean': (f,), 'scale': (f,)}
        for name in _ORDER:
            array = np.array(arrays[name], dtype=np.float64)
            if array.shape != shapes[name]:
                raise ValueError('{0} has shape {1}, expected {2}.'.format(
                    name, array.shape, shapes[name]))
            if not np.all(np.isfinite(array)):
                raise ValueError('{0} is not finite.'.format(name))
            setattr(self, name, array)
        if np.any(self.scale <= 0):
            raise ValueError('feature scales must be positive.')

    def __repr__(self):
        return '<ModelParams: {0} -> {1} -> {2}>'.format(
            self.n_features, self.hidden, self.num_classes)

    @property
    def n_features(self):
        return self.w1.shape[0]

    @property
    def hidden(self):
        return self.w1.shape[1]

    @property
    def num_classes(self):
        return self.w2.shape[1]

    def copy(self):
        return ModelParams(*[getattr(self, name) for name in _ORDER])

    def standardize(self, features):
        features = np.asarray(features, dtype=np.float64)
        if features.ndim != 2 or features.shape[1] != self.n_features:
            raise ValueError('the model expects {0} features per point, got '
                             'shape {1}.'.format(self.n_features,
                                                 features.shape))
        return (features - self.mean) / self.scale

    def forward(self, features):
        """
        Logits of points.

        Returns
        -------
        logits : `numpy.ndarray`
            ``(N, K)``.

        cache : `tuple`
            Standardized inputs and hidden activations for :meth:`backward`.
        """
        x = self.standardize(features)
        hidden = np.maximum(x.dot(self.w1) + self.b1, 0)
        return hidden.dot(self.w2) + self.b2, (x, hidden)

    def backward(self, cache, grad_logits):
        """
        Gradients of all weights from the gradient of the logits.

        Returns
        -------
        gradients : `dict`
            Keys ``w1``, ``b1``, ``w2`` and ``b2``.
        """
        x, hidden = cache
        grad_hidden = grad_logits.dot(self.w2.T) * (hidden > 0)
        return {'w2': hidden.T.dot(grad_logits),
                'b2': grad_logits.sum(axis=0),
                'w1': x.T.dot(grad_hidden),
                'b1': grad_hidden.sum(axis=0)}


def init_model(n_features, num_classes, hidden=64, seed=0, mean=None,
               scale=None):
    """
    Random weights (He initialization, zero biases).
    """
    rng = np.random.default_rng(seed)
    w1 = rng.normal(0, np.sqrt(2. / n_features), (n_features, hidden))
    w2 = rng.normal(0, np.sqrt(2. / hidden), (hidden, num_classes))
    return ModelParams(w1, np.zeros(hidden), w2, np.zeros(num_classes),
                       mean, scale)


def predict_features(model, features):
    """
    Class predictions and probabilities for a feature array.

    Returns
    -------
    labels : `numpy.ndarray`
        ``(N,)`` argmax classes, the lowest class on ties.

    probabilities : `numpy.ndarray`
        ``(N, K)`` softmax of the logits.
    """
    logits, _ = model.forward(features)
    probabilities = softmax(logits, axis=1)
    return np.argmax(logits, axis=1), probabilities


def predict(model, scene):
    """
    Class predictions for the points of a scene.

    The scene must carry its features (see
    :func:`~pyadaco.trainer.featurize` and
    `~pyadaco.scene.SampleScene.with_features`).

    Raises
    ------
    ValueError
        If the scene has no features or their number does not match the
        model.
    """
    if scene.features is None:
        raise ValueError('scene {0} has no features.'.format(scene.id))
    return predict_features(model, scene.features)


def write_checkpoint(model, filename):
    """
    Writes a model.

    The file starts with the magic ``ADACOMLP`` followed by the little-endian
    uint32 values version, ``F``, ``H`` and ``K``, then the little-endian
    float32 arrays ``w1, b1, w2, b2, mean, scale`` in C order.

    The in-memory model is float64, so a loaded model differs from it by the
    float32 rounding of its weights and may give other labels on points
    whose top two logits are that close.
    """
    with open(filename, 'wb') as file:
        file.write(CHECKPOINT_MAGIC)
        file.write(struct.pack('<4I', _VERSION, model.n_features,
                               model.hidden, model.num_classes))
        for name in _ORDER:
            file.write(getattr(model, name).astype('<f4').tobytes())


def read_checkpoint(filename):
    """
    Reads a model written by :func:`write_checkpoint`.

    The weights come back as float64 holding the stored float32 values.

    Raises
    ------
    SceneFormatError
        If the file is not a checkpoint or is truncated.
    """
    with open(filename, 'rb') as file:
        data = file.read()
    header = len(CHECKPOINT_MAGIC) + 16
    if len(data) < header or not data.startswith(CHECKPOINT_MAGIC):
        raise SceneFormatError('{0} is not a model checkpoint.'.format(
            filename))
    version, f, h, k = struct.unpack('<4I', data[len(CHECKPOINT_MAGIC):
                                                 header])
    if version != _VERSION:
        raise SceneFormatError('unsupported checkpoint version {0}.'.format(
            version))
    shapes = [(f, h), (h,), (h, k), (k,), (f,), (f,)]
    sizes = [int(np.prod(shape)) for shape in shapes]
    if len(data) != header + 4 * sum(sizes):
        raise SceneFormatError('{0} is truncated.'.format(filename))
    values = np.frombuffer(data, dtype='<f4', offset=header)
    arrays = []
    for shape, size in zip(shapes, sizes):
        arrays.append(values[:size].reshape(shape).astype(np.float64))
        values = values[size:]
    return ModelParams(*arrays)
