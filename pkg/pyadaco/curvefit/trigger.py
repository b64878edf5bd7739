# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np

from .curve import CurveFitParams, eval_derivative, fit_curve
from ..utils.exceptions import CorrectionTriggerError

__all__ = ['LearningCurve', 'detect_correction', 'derivative_drop',
           'first_trigger_epoch', 'TRIGGER_MODES']

TRIGGER_MODES = ('once', 'each-down')


class LearningCurve(object):
    """
    Training-mIoU series of one sample and its correction state.

    Parameters
    ----------
    sample_id : `str`
        The sample.

    miou_series : iterable, optional
        mIoU of epochs ``1, 2, ...``. Default is empty.

    Attributes
    ----------
    fit : `~pyadaco.curvefit.CurveFitParams` or ``None``
        The latest fit of the series.

    t_c : `int` or ``None``
        Epoch of the latest correction.

    corrected : `bool`
        Whether the labels of the sample were refurbished.
    """

    def __init__(self, sample_id, miou_series=()):
        self.sample_id = str(sample_id)
        self._series = []
        for value in miou_series:
            self.append(value)
        self.fit = None
        self.t_c = None
        self.corrected = False

    def __repr__(self):
        return '<LearningCurve {0}: {1} epochs, t_c={2}>'.format(
            self.sample_id, self.epoch, self.t_c)

    @property
    def miou_series(self):
        """(`numpy.ndarray`) Copy of the series."""
        return np.array(self._series, dtype=np.float64)

    @property
    def epoch(self):
        """(`int`) Current epoch, i.e. the number of recorded values."""
        return len(self._series)

    def append(self, miou):
        """
        Records the mIoU of the next epoch.

        Raises
        ------
        ValueError
            If the value is not in ``[0, 1]``.
        """
        miou = float(miou)
        if not 0 <= miou <= 1:
            raise ValueError('mIoU must be in [0, 1], got {0}.'.format(miou))
        self._series.append(miou)

    def refit(self):
        """
        Fits the whole series again.

        Returns
        -------
        fit : `~pyadaco.curvefit.CurveFitParams` or ``None``
            ``None`` while fewer than 3 epochs are recorded.
        """
        if self.epoch >= 3:
            self.fit = fit_curve(self._series)
        return self.fit

    def mark_corrected(self, epoch):
        """Records a correction at ``epoch``."""
        self.t_c = int(epoch)
        self.corrected = True

    def to_dict(self):
        return {'sample_id': self.sample_id,
                'miou_series': list(self._series),
                'fit': None if self.fit is None else self.fit.to_dict(),
                't_c': self.t_c,
                'corrected': self.corrected}

    @classmethod
    def from_dict(cls, d):
        curve = cls(d['sample_id'], d['miou_series'])
        if d.get('fit') is not None:
            curve.fit = CurveFitParams(**d['fit'])
        curve.t_c = d.get('t_c')
        curve.corrected = bool(d.get('corrected', False))
        return curve


def derivative_drop(p, t):
    """
    Relative change ``|f'(1) - f'(t)| / f'(1)`` of the curve's derivative.

    Raises
    ------
    CorrectionTriggerError
        If ``f'(1) = 0`` (a flat curve).
    """
    first = float(eval_derivative(p, 1))
    if not first > 0:
        raise CorrectionTriggerError(
            "the correction trigger is undefined for f'(1) = {0}.".format(
                first))
    return np.abs(first - eval_derivative(p, t)) / first


def detect_correction(curve, r=0.9, correct_once=True, mode='once'):
    """
    Decides whether the labels of a sample are corrected in its current
    epoch.

    Parameters
    ----------
    curve : `LearningCurve`
        The sample, with a current ``fit``.

    r : `float`, optional
        Threshold of the derivative drop. Default is ``0.9``.

    correct_once : `bool`, optional
        Never fire again for a corrected sample. Default is ``True``.

    mode : {'once', 'each-down'}, optional
        ``'once'`` fires when the drop exceeds ``r``. ``'each-down'`` fires
        at every epoch where the drop exceeds ``r`` and the derivative is
        still decreasing, ignoring ``correct_once``. Default is ``'once'``.

    Returns
    -------
    t_c : `int` or ``None``
        The current epoch if the trigger fires.

    Raises
    ------
    ValueError
        If the curve has no fit or the mode is unknown.

    CorrectionTriggerError
        If ``f'(1) = 0``.

    Examples
    --------
    With ``a = 0.8, b = 1, c = 5`` the drop is ``1 - exp(-(t - 1) / 5)``,
    which exceeds 0.9 from epoch 13 on.
    """
    if mode not in TRIGGER_MODES:
        raise ValueError('mode must be one of {0}, got {1!r}.'.format(
            TRIGGER_MODES, mode))
    if curve.fit is None:
        raise ValueError('sample {0} has no fitted curve.'.format(
            curve.sample_id))
    if mode == 'once' and correct_once and curve.corrected:
        return None
    t = curve.epoch
    if not derivative_drop(curve.fit, t) > r:
        return None
    if mode == 'each-down' and t > 1:
        if not (eval_derivative(curve.fit, t) <
                eval_derivative(curve.fit, t - 1)):
            return None
    return t


def first_trigger_epoch(p, r=0.9, epochs=40):
    """
    The first epoch in ``2 ... epochs`` at which the derivative drop of a
    fitted curve exceeds ``r``, or ``None``.

    Raises
    ------
    CorrectionTriggerError
        If ``f'(1) = 0``.

    Examples
    --------
    >>> from pyadaco.curvefit import CurveFitParams, first_trigger_epoch
    >>> first_trigger_epoch(CurveFitParams(0.8, 1., 5.), 0.9)
    13
    """
    t = np.arange(2, int(epochs) + 1)
    fired = np.flatnonzero(derivative_drop(p, t) > r)
    return int(t[fired[0]]) if fired.size else None
