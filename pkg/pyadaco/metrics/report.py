# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
Evaluation reports.

``metrics.json`` holds::

    {"miou": float, "macc": float,
     "iou": {class name: float or null},
     "confusion": K x K counts (rows ground truth), "ignored": int,
     "label_quality": {"noisy": {...}, "refurbished": {...},
                       "delta": {...}}}

where every label-quality entry has the keys ``accuracy``, ``miou`` and
``unlabeled`` of :func:`~pyadaco.metrics.label_quality` and ``delta`` is
refurbished minus noisy. ``label_quality`` is ``null`` if no audit was
made. ``curves.csv`` has the columns ``sample_id``, ``epoch``, ``miou`` and
``fitted``; ``plots/<id>.svg`` shows the learning curve of every sample.
"""

import os

import matplotlib
import numpy as np
from astropy import log
from astropy.table import Table, vstack

from .confusion import miou, macc
from ..curvefit import LearningCurve, eval_curve
from ..utils.json_io import json_read_lines, json_write
from ..utils.matplotlib_convenience import pltLearningCurve

__all__ = ['emit_report', 'read_curves', 'curve_table', 'plot_curve',
           'metrics_summary', 'METRICS_FILE', 'CURVES_FILE']

METRICS_FILE = 'metrics.json'
CURVES_FILE = 'learning_curves.jsonl'

# no timestamps and fixed element ids, so equal curves give equal files
_PLOT_METADATA = {'svg': {'Date': None}, 'pdf': {'CreationDate': None}}
_PLOT_RC = {'svg.hashsalt': 'pyadaco'}


def _finite_or_none(value):
    value = float(value)
    return value if np.isfinite(value) else None


def curve_table(curve):
    """
    The series of a learning curve as table with the columns ``epoch``,
    ``miou`` and ``fitted`` (``nan`` without a fit).
    """
    epochs = np.arange(1, curve.epoch + 1)
    if curve.fit is None or curve.epoch == 0:
        fitted = np.full(curve.epoch, np.nan)
    else:
        fitted = eval_curve(curve.fit, epochs)
    return Table([epochs, curve.miou_series, fitted],
                 names=('epoch', 'miou', 'fitted'))


def plot_curve(curve):
    """
    Figure of the training mIoU of a sample, its fitted curve and the
    correction epoch (see `~pyadaco.utils.pltLearningCurve`).
    """
    table = curve_table(curve)
    fitted = None if curve.fit is None else table['fitted']
    return pltLearningCurve(table['epoch'], table['miou'], fitted,
                            curve.t_c, 'sample {0}'.format(curve.sample_id))


def read_curves(directory):
    """
    The learning curves stored in a training output directory.

    Raises
    ------
    ValueError
        If the directory has no learning curves.
    """
    filename = os.path.join(directory, CURVES_FILE)
    if not os.path.isfile(filename):
        raise ValueError('{0} has no {1}.'.format(directory, CURVES_FILE))
    return [LearningCurve.from_dict(d) for d in json_read_lines(filename)]


def metrics_summary(cm, class_names=None, quality=None):
    """
    The content of ``metrics.json``.

    Parameters
    ----------
    cm : `~pyadaco.metrics.ConfusionMatrix`
        Predictions against clean labels.

    class_names : iterable of `str` or ``None``, optional
        Keys of the per-class IoU. Default is the class indices.

    quality : `dict` or ``None``, optional
        ``{"noisy": ..., "refurbished": ...}`` label audits.
        Default is ``None``.
    """
    if class_names is None:
        class_names = [str(k) for k in range(cm.num_classes)]
    class_names = list(class_names)
    if len(class_names) != cm.num_classes:
        raise ValueError('{0} class names for {1} classes.'.format(
            len(class_names), cm.num_classes))
    value, iou = miou(cm)
    summary = {'miou': value, 'macc': macc(cm),
               'iou': {name: _finite_or_none(v)
                       for name, v in zip(class_names, iou)},
               'confusion': cm.counts.tolist(), 'ignored': cm.ignored,
               'label_quality': None}
    if quality is not None:
        summary['label_quality'] = {
            'noisy': quality['noisy'], 'refurbished': quality['refurbished'],
            'delta': {key: quality['refurbished'][key] - quality['noisy'][key]
                      for key in quality['noisy']}}
    return summary


def emit_report(directory, cm, curves=None, class_names=None, quality=None,
                plot_format=None):
    """
    Writes ``metrics.json``, ``curves.csv`` and one plot per learning curve.

    Parameters
    ----------
    directory : `str`
        Output directory, created if necessary.

    cm : `~pyadaco.metrics.ConfusionMatrix`

    curves : `list` of `~pyadaco.curvefit.LearningCurve` or ``None``, optional
        Default is the curves stored in ``directory`` by
        `~pyadaco.trainer.write_run`.

    class_names, quality :
        See :func:`metrics_summary`.

    plot_format : `str` or ``None``, optional
        Default is ``pyadaco.conf.plot_format``.

    Returns
    -------
    summary : `dict`
        The content of ``metrics.json``.

    Raises
    ------
    ValueError
        If no curves are given and the directory has none.

    Notes
    -----
    The plots carry no timestamp, so the same curves always give the same
    files.
    """
    if curves is None:
        curves = read_curves(directory)
    if plot_format is None:
        from .. import conf
        plot_format = conf.plot_format
    os.makedirs(os.path.join(directory, 'plots'), exist_ok=True)
    summary = metrics_summary(cm, class_names, quality)
    json_write(os.path.join(directory, METRICS_FILE), summary)
    tables = []
    for curve in curves:
        table = curve_table(curve)
        table.add_column([curve.sample_id] * len(table), name='sample_id',
                         index=0)
        tables.append(table)
        figure = plot_curve(curve)
        with matplotlib.rc_context(_PLOT_RC):
            figure.savefig(os.path.join(directory, 'plots', '{0}.{1}'.format(
                curve.sample_id, plot_format)), format=plot_format,
                metadata=_PLOT_METADATA.get(plot_format))
    if tables:
        vstack(tables).write(os.path.join(directory, 'curves.csv'),
                             format='ascii.csv', overwrite=True)
    log.info('report written to {0}: mIoU {1:.4f}, mAcc {2:.4f}.'.format(
        directory, summary['miou'], summary['macc']))
    return summary
