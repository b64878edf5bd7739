# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
Layout of a training output directory::

    model.bin               checkpoint, see `~pyadaco.trainer.write_checkpoint`
    epochs.csv              one row per epoch (epoch, lr, loss, train_miou,
                            n_corrected)
    corrections.jsonl       one `~pyadaco.corrector.CorrectionReport` per line
    learning_curves.jsonl   one `~pyadaco.curvefit.LearningCurve` per line
    curves/<id>.csv         epoch, miou, fitted per sample
    labels/<id>.labels      final training labels, N little-endian uint16
"""

import os

from astropy import log

from .model import write_checkpoint
from ..metrics.report import curve_table, CURVES_FILE
from ..utils.json_io import json_append_line

__all__ = ['write_run', 'MODEL_FILE', 'EPOCHS_FILE', 'CORRECTIONS_FILE']

MODEL_FILE = 'model.bin'
EPOCHS_FILE = 'epochs.csv'
CORRECTIONS_FILE = 'corrections.jsonl'


def _truncate(filename):
    open(filename, 'w').close()
    return filename


def write_run(result, directory):
    """
    Writes the outputs of a training run.

    Parameters
    ----------
    result : `~pyadaco.trainer.TrainResult`

    directory : `str`
        Created if necessary; existing outputs are replaced.
    """
    for sub in ('curves', 'labels'):
        os.makedirs(os.path.join(directory, sub), exist_ok=True)
    write_checkpoint(result.model, os.path.join(directory, MODEL_FILE))
    result.epochs.write(os.path.join(directory, EPOCHS_FILE),
                        format='ascii.csv', overwrite=True)
    corrections = _truncate(os.path.join(directory, CORRECTIONS_FILE))
    for report in result.reports:
        json_append_line(corrections, report.to_dict())
    curves = _truncate(os.path.join(directory, CURVES_FILE))
    for curve in result.curves:
        json_append_line(curves, curve.to_dict())
        curve_table(curve).write(
            os.path.join(directory, 'curves', curve.sample_id + '.csv'),
            format='ascii.csv', overwrite=True)
    for scene in result.scenes:
        with open(os.path.join(directory, 'labels',
                               scene.id + '.labels'), 'wb') as file:
            file.write(scene.noisy_labels.astype('<u2').tobytes())
    log.info('wrote the training outputs to {0}.'.format(directory))
