# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np
from astropy import log
from astropy.table import Table

from .config import TrainConfig
from .features import featurize
from .model import init_model, predict, predict_features
from ..corrector import (NoiseCorrector, apply_full_supervision,
                         scene_geometry, training_miou)
from ..loss import ArlState, LogitsBatch, softmax_ce
from ..metrics.confusion import confusion, label_quality, miou, macc
from ..synth import generate_dataset
from ..utils.exceptions import TrainingDivergedError
from ..utils.parallel import parallel_map

__all__ = ['TrainResult', 'train', 'prepare_scenes', 'evaluate',
           'run_experiment']


class TrainResult(object):
    """
    Everything a training run produces.

    Attributes
    ----------
    model : `~pyadaco.trainer.ModelParams`

    curves : `list` of `~pyadaco.curvefit.LearningCurve`
        One per training sample, in dataset order.

    reports : `list` of `~pyadaco.corrector.CorrectionReport`
        In the order the corrections happened.

    scenes : `list` of `~pyadaco.scene.SampleScene`
        The training samples with their final (possibly refurbished) labels
        and the point features, without clean labels.

    epochs : `~astropy.table.Table`
        One row per epoch: ``epoch``, ``lr``, ``loss`` (mean over the
        batches), ``train_miou`` (mean over the samples) and
        ``n_corrected`` (samples corrected so far).
    """

    def __init__(self, model, curves, reports, scenes, epochs):
        self.model = model
        self.curves = curves
        self.reports = reports
        self.scenes = scenes
        self.epochs = epochs

    def __repr__(self):
        return '<TrainResult: {0} epochs, {1} samples, {2} corrections>' \
               ''.format(len(self.epochs), len(self.scenes),
                         len(self.reports))

    def __iter__(self):
        # unpacks as (model, curves, reports)
        return iter((self.model, self.curves, self.reports))


def prepare_scenes(scenes, corrector, threads=1):
    """
    Attaches the point features of :func:`~pyadaco.trainer.featurize` to
    every scene.

    The ground fit and the clusters come from ``corrector`` (and stay cached
    there for the refurbishment).
    """
    def attach(scene):
        return scene.with_features(featurize(scene,
                                             corrector.geometry(scene)))
    return parallel_map(attach, scenes, threads)


def _standardization(scenes):
    features = np.concatenate([scene.features for scene in scenes])
    mean = features.mean(axis=0)
    scale = features.std(axis=0)
    scale[~(scale > 0)] = 1.
    return mean, scale


def _sgd_epoch(model, velocity, scenes, states, cfg, lr, rng):
    losses = []
    for index in rng.permutation(len(scenes)):
        scene = scenes[index]
        labels = apply_full_supervision(scene)
        order = rng.permutation(scene.n_points)
        for start in range(0, scene.n_points, cfg.batch_size):
            rows = order[start:start + cfg.batch_size]
            batch_targets = labels[rows]
            logits, cache = model.forward(scene.features[rows])
            if not np.all(np.isfinite(logits)):
                raise TrainingDivergedError(
                    'non-finite logits on sample {0}.'.format(scene.id))
            batch = LogitsBatch(logits, batch_targets)
            if batch.n_valid == 0:
                continue
            if cfg.loss_mode == 'ce':
                value, gradient = softmax_ce(batch)
            else:
                value, gradient = states[scene.id].evaluate(batch)
            if not np.isfinite(value):
                raise TrainingDivergedError(
                    'loss {0} on sample {1} with the learning rate {2}.'
                    ''.format(value, scene.id, lr))
            for name, grad in model.backward(cache, gradient).items():
                velocity[name] *= cfg.momentum
                velocity[name] -= lr * grad
                getattr(model, name)[...] += velocity[name]
            losses.append(value)
    return float(np.mean(losses)) if losses else np.nan


def train(dataset, cfg=None, threads=1):
    """
    Trains the point classifier with adaptive noise correction.

    Parameters
    ----------
    dataset : `list` of `~pyadaco.scene.SampleScene`
        The training samples with their noisy labels. Clean labels are
        stripped before training.

    cfg : `~pyadaco.trainer.TrainConfig` or ``None``, optional
        Default is the default configuration.

    threads : `int`, optional
        Worker threads for the per-sample work. The result does not depend
        on it. Default is ``1``.

    Returns
    -------
    result : `TrainResult`
        Unpacks as ``model, curves, reports``.

    Raises
    ------
    ValueError
        If the dataset is empty or the samples use different vocabularies.

    TrainingDivergedError
        If the loss becomes non-finite.

    Notes
    -----
    Every epoch first predicts all samples with the current model. The
    corrector records the predictions, extends the learning curve of every
    sample with its training mIoU against the current labels and
    refurbishes the samples whose trigger fires. Then the model takes SGD
    steps with momentum over shuffled batches of every sample, with the
    adaptive robust loss in the phase of the sample (or the cross entropy
    if ``cfg.loss_mode`` is ``'ce'``). Labels only change between epochs.
    """
    if cfg is None:
        cfg = TrainConfig()
    if len(dataset) == 0:
        raise ValueError('cannot train on an empty dataset.')
    vocabulary = dataset[0].vocabulary
    for scene in dataset:
        if scene.vocabulary != vocabulary:
            raise ValueError('sample {0} does not share the vocabulary of '
                             'sample {1}.'.format(scene.id, dataset[0].id))
    num_classes = vocabulary.K
    corrector = NoiseCorrector(num_classes, cfg.corrector, threads)
    scenes = prepare_scenes([scene.without_clean_labels()
                             for scene in dataset], corrector, threads)
    mean, scale = _standardization(scenes)
    model = init_model(scenes[0].n_features, num_classes, cfg.hidden,
                       cfg.seed, mean, scale)
    velocity = {name: np.zeros_like(getattr(model, name))
                for name in ('w1', 'b1', 'w2', 'b2')}
    states = {scene.id: ArlState(cfg.loss) for scene in scenes}
    rng = np.random.default_rng([cfg.seed, 1])
    log.info('training on {0} samples ({1} points) for {2} epochs.'.format(
        len(scenes), sum(scene.n_points for scene in scenes), cfg.epochs))

    epochs = Table(names=('epoch', 'lr', 'loss', 'train_miou', 'n_corrected'),
                   dtype=('i8', 'f8', 'f8', 'f8', 'i8'))
    for epoch in range(1, cfg.epochs + 1):
        predictions = parallel_map(lambda scene: predict(model, scene)[0],
                                   scenes, threads)
        values = [training_miou(scene.noisy_labels, pred, num_classes)
                  for scene, pred in zip(scenes, predictions)]
        if cfg.use_correction:
            scenes, _ = corrector.observe_all(scenes, predictions)
            for scene in scenes:
                curve = corrector.curves[scene.id]
                if curve.corrected:
                    states[scene.id].switch(curve.t_c)
        else:
            for scene, value in zip(scenes, values):
                if value is not None:
                    corrector.curve(scene.id).append(value)
        lr = cfg.learning_rate(epoch)
        loss = _sgd_epoch(model, velocity, scenes, states, cfg, lr, rng)
        defined = [value for value in values if value is not None]
        train_miou = float(np.mean(defined)) if defined else np.nan
        n_corrected = sum(curve.corrected
                          for curve in corrector.curves.values())
        epochs.add_row((epoch, lr, loss, train_miou, n_corrected))
        log.info('epoch {0}/{1}: loss {2:.4f}, training mIoU {3:.4f}, '
                 '{4} samples corrected.'.format(epoch, cfg.epochs, loss,
                                                 train_miou, n_corrected))
    curves = [corrector.curve(scene.id) for scene in scenes]
    return TrainResult(model, curves, list(corrector.reports), scenes,
                       epochs)


def evaluate(model, scenes, cfg=None, threads=1):
    """
    Confusion of the model predictions against the clean labels.

    Parameters
    ----------
    model : `~pyadaco.trainer.ModelParams`

    scenes : `list` of `~pyadaco.scene.SampleScene`
        Scenes with clean labels. Their point features are computed with
        the ground fit and clustering parameters of ``cfg``.

    cfg : `~pyadaco.corrector.CorrectorConfig` or ``None``, optional
        Default is the default configuration.

    threads : `int`, optional

    Returns
    -------
    cm : `~pyadaco.metrics.ConfusionMatrix`
        Summed over the scenes.

    Raises
    ------
    ValueError
        If a scene has no clean labels or the list is empty.
    """
    if len(scenes) == 0:
        raise ValueError('nothing to evaluate.')
    for scene in scenes:
        if scene.clean_labels is None:
            raise ValueError('scene {0} has no clean labels.'.format(
                scene.id))
    def tally(scene):
        features = featurize(scene, scene_geometry(scene, cfg))
        labels, _ = predict_features(model, features)
        return confusion(scene.clean_labels, labels, model.num_classes)

    matrices = parallel_map(tally, scenes, threads)
    total = matrices[0]
    for cm in matrices[1:]:
        total = total + cm
    return total


def run_experiment(synth_cfg, train_cfg=None, n_eval=5, threads=1):
    """
    Generates a synthetic benchmark, trains on it and evaluates on held-out
    scenes.

    The first ``synth_cfg.n_scenes`` scenes are the training set, the next
    ``n_eval`` scenes (generated with the same configuration) the test set.

    Returns
    -------
    summary : `dict`
        ``result`` (the `TrainResult`), ``noisy`` and ``refurbished``
        (:func:`~pyadaco.metrics.label_quality` of the training labels
        before and after training), ``miou`` and ``macc`` on the test set
        and ``iou`` per class.
    """
    scenes = generate_dataset(
        synth_cfg.replace(n_scenes=synth_cfg.n_scenes + n_eval), threads)
    train_set, test_set = scenes[:synth_cfg.n_scenes], \
        scenes[synth_cfg.n_scenes:]
    result = train(train_set, train_cfg, threads)
    k = train_set[0].num_classes
    clean = np.concatenate([scene.clean_labels for scene in train_set])
    noisy = np.concatenate([scene.noisy_labels for scene in train_set])
    final = np.concatenate([scene.noisy_labels for scene in result.scenes])
    cm = evaluate(result.model, test_set,
                  None if train_cfg is None else train_cfg.corrector, threads)
    value, iou = miou(cm)
    return {'result': result,
            'noisy': label_quality(clean, noisy, k),
            'refurbished': label_quality(clean, final, k),
            'miou': value, 'macc': macc(cm), 'iou': iou}
