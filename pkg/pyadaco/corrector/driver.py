# Licensed under a 3-clause BSD style license - see LICENSE.rst

import warnings
import zlib

import numpy as np
from astropy import log

from .config import CorrectorConfig
from .refurbish import refurbish_sample
from ..curvefit import LearningCurve, detect_correction
from ..geometry import fit_ground, cluster_scene
from ..history import PredictionHistory
from ..metrics.confusion import confusion, miou
from ..utils.exceptions import (AdaCoWarning, CurveFitError,
                                CorrectionTriggerError, GroundFitError,
                                MetricUndefinedError)
from ..utils.json_io import json_append_line
from ..utils.parallel import parallel_map

__all__ = ['NoiseCorrector', 'SceneGeometry', 'scene_geometry',
           'training_miou']


class SceneGeometry(object):
    """
    Ground model, ground mask and clusters of one scene.
    """

    def __init__(self, ground_model, ground, clusters):
        self.ground_model = ground_model
        self.ground = ground
        self.clusters = clusters

    def height(self, points):
        """Height above the ground plane (``z`` if no plane was found)."""
        points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
        if self.ground_model is None:
            return points[:, 2].copy()
        return self.ground_model.height(points)


def scene_geometry(scene, cfg=None, threads=1):
    """
    Fits the ground of a scene and clusters its other points.

    Parameters
    ----------
    scene : `~pyadaco.scene.SampleScene`

    cfg : `CorrectorConfig` or ``None``, optional
        Ground fit and clustering parameters. Default is the defaults.

    threads : `int`, optional
        Blocks clustered in parallel. Default is ``1``.

    Returns
    -------
    geometry : `SceneGeometry`
        If the ground cannot be fitted a warning is issued and no point is
        ground.
    """
    if cfg is None:
        cfg = CorrectorConfig()
    try:
        model, ground = fit_ground(scene.points, cfg.ground_iterations,
                                   cfg.ground_tol, cfg.rng_seed)
    except (GroundFitError, ValueError) as exc:
        warnings.warn('no ground plane for sample {0}: {1}'.format(
            scene.id, exc), AdaCoWarning)
        model, ground = None, np.zeros(scene.n_points, dtype=bool)
    clusters = cluster_scene(scene.points, ground, cfg.eps, cfg.min_pts,
                             cfg.block, cfg.stride, threads)
    return SceneGeometry(model, ground, clusters)


def training_miou(labels, predictions, num_classes):
    """
    mIoU of predictions against the current (noisy) labels of a sample.

    Returns
    -------
    miou : `float` or ``None``
        ``None`` if the sample has no labeled point.
    """
    try:
        return miou(confusion(labels, predictions, num_classes))[0]
    except MetricUndefinedError:
        return None


class NoiseCorrector(object):
    """
    Adaptive noise correction of a training set.

    Each call of :meth:`observe` handles one epoch of one sample: the
    training mIoU of the predictions against the current labels extends the
    learning curve of the sample, the curve is fitted again and, if the
    trigger fires, the labels are refurbished from the prediction history
    and the clusters of the sample. The predictions are recorded afterwards,
    so a correction only uses earlier rounds.

    Parameters
    ----------
    num_classes : `int`
        ``K``.

    cfg : `CorrectorConfig` or ``None``, optional
        Default is the default configuration.

    threads : `int`, optional
        Worker threads for :meth:`observe_all` and the clustering.
        Default is ``1``.

    Attributes
    ----------
    history : `~pyadaco.history.PredictionHistory`

    curves : `dict`
        `~pyadaco.curvefit.LearningCurve` per sample id.

    reports : `list`
        The `~pyadaco.corrector.CorrectionReport` of every correction.
    """

    def __init__(self, num_classes, cfg=None, threads=1):
        if cfg is None:
            cfg = CorrectorConfig()
        self.cfg = cfg
        self.num_classes = int(num_classes)
        self.threads = threads
        self.history = PredictionHistory(self.num_classes, cfg.t_m)
        self.curves = {}
        self.reports = []
        self._geometry = {}

    def __repr__(self):
        return '<NoiseCorrector: {0} samples, {1} corrections>'.format(
            len(self.curves), len(self.reports))

    def geometry(self, scene):
        """The cached `SceneGeometry` of a sample."""
        if scene.id not in self._geometry:
            self._geometry[scene.id] = scene_geometry(scene, self.cfg,
                                                      self.threads)
        return self._geometry[scene.id]

    def curve(self, sample_id):
        if sample_id not in self.curves:
            self.curves[sample_id] = LearningCurve(sample_id)
        return self.curves[sample_id]

    def phase(self, sample_id):
        """``'correction'`` once the sample was corrected, else ``'warmup'``."""
        curve = self.curves.get(sample_id)
        return 'correction' if curve is not None and curve.corrected \
            else 'warmup'

    def _rng(self, sample_id, epoch):
        return np.random.default_rng([self.cfg.rng_seed,
                                      zlib.crc32(sample_id.encode('utf-8')),
                                      epoch])

    def _trigger(self, curve):
        try:
            curve.refit()
        except CurveFitError as exc:
            warnings.warn('skipping the trigger of sample {0} in epoch {1}: '
                          '{2}'.format(curve.sample_id, curve.epoch, exc),
                          AdaCoWarning)
            return None
        if curve.fit is None:
            return None
        try:
            return detect_correction(curve, self.cfg.r,
                                     self.cfg.correct_once,
                                     self.cfg.trigger_mode)
        except CorrectionTriggerError as exc:
            log.debug('no trigger for sample {0}: {1}'.format(
                curve.sample_id, exc))
            return None

    def observe(self, scene, predictions):
        """
        Processes one epoch of one sample.

        Parameters
        ----------
        scene : `~pyadaco.scene.SampleScene`
            The sample with its current labels.

        predictions : array-like
            ``(N,)`` predicted class indices of this epoch.

        Returns
        -------
        scene : `~pyadaco.scene.SampleScene`
            The sample, with refurbished labels if it was corrected.

        report : `~pyadaco.corrector.CorrectionReport` or ``None``
        """
        predictions = np.asarray(predictions, dtype=np.int64)
        curve = self.curve(scene.id)
        value = training_miou(scene.noisy_labels, predictions,
                              self.num_classes)
        report = None
        if value is not None:
            curve.append(value)
            t_c = self._trigger(curve)
            if t_c is not None and self.history.q_valid(scene.id):
                reliable = self.history.reliable_set(scene.id,
                                                     self.cfg.gamma)
                scene, report = refurbish_sample(
                    scene, self.geometry(scene).clusters, reliable, self.cfg,
                    self._rng(scene.id, t_c), t_c)
                curve.mark_corrected(t_c)
                self.reports.append(report)
                log.info('corrected sample {0} at epoch {1}: {2} reliable '
                         'points, {3} labels changed.'.format(
                             scene.id, t_c, report.n_reliable,
                             report.n_points_relabeled))
        self.history.record(scene.id, predictions)
        return scene, report

    def observe_all(self, scenes, predictions):
        """
        :meth:`observe` for many samples, in parallel.

        Returns
        -------
        scenes : `list`
            The (possibly corrected) samples in input order.

        reports : `list`
            The reports of this call.
        """
        for scene in scenes:
            self.curve(scene.id)
        results = parallel_map(lambda pair: self.observe(*pair),
                               list(zip(scenes, predictions)), self.threads)
        # reports in sample order, independent of thread timing
        reports = [report for _, report in results if report is not None]
        if reports:
            done = set(id(report) for report in reports)
            kept = [r for r in self.reports if id(r) not in done]
            self.reports = kept + reports
        return [scene for scene, _ in results], reports

    def write_reports(self, filename):
        """Appends all reports as JSON lines."""
        for report in self.reports:
            json_append_line(filename, report.to_dict())
