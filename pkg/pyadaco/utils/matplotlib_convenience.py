# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np
from matplotlib.figure import Figure

__all__ = ['pltLearningCurve']


def pltLearningCurve(epochs, miou, fitted=None, trigger=None, title=None):
    """
    Plots a training-mIoU series with its fitted curve on a new figure.

    Parameters
    ----------
    epochs : `numpy.ndarray`
        The 1-indexed epochs.

    miou : `numpy.ndarray`
        The recorded training mIoU per epoch.

    fitted : `numpy.ndarray` or ``None``, optional
        The fitted curve evaluated at ``epochs``. Not drawn if ``None``.
        Default is ``None``.

    trigger : `int` or ``None``, optional
        The correction epoch, marked with a vertical dashed line.
        Default is ``None``.

    title : `str` or ``None``, optional
        The axes title. Default is ``None``.

    Returns
    -------
    figure : `matplotlib.figure.Figure`
        The figure. Its first axes holds the recorded series as first line
        and, if given, the fitted curve as second line.

    Notes
    -----
    The figure is created without `matplotlib.pyplot` so no global state is
    touched and plots can be produced from worker threads. Save it with
    ``figure.savefig(name, format='svg')``.
    """
    epochs = np.asarray(epochs, dtype=np.float64)
    figure = Figure(figsize=(5, 3.5))
    axes = figure.add_subplot(1, 1, 1)
    axes.plot(epochs, miou, 'o-', color='k', markersize=3, linewidth=1,
              label='training mIoU')
    if fitted is not None:
        axes.plot(epochs, fitted, '-', color='b', linewidth=1.5,
                  label='fitted curve')
    if trigger is not None:
        axes.axvline(trigger, linestyle='--', color='r',
                     label='correction epoch {0}'.format(trigger))
    axes.set_xlabel('Epoch')
    axes.set_ylabel('mIoU')
    axes.set_ylim(0, 1)
    if title is not None:
        axes.set_title(title)
    axes.legend(loc='lower right')
    figure.tight_layout()
    return figure
