# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np

from .. import (CurveFitParams, LearningCurve, detect_correction,
                derivative_drop, eval_curve)
from ...utils.exceptions import CorrectionTriggerError

from pytest import raises


def curve_at(epoch, params=None):
    curve = LearningCurve('000001', np.full(epoch, 0.5))
    curve.fit = params or CurveFitParams(0.8, 1, 5)
    return curve


def first_trigger(r, params=None, epochs=200):
    for t in range(1, epochs):
        if detect_correction(curve_at(t, params), r) is not None:
            return t
    return None


def test_fires_at_epoch_13():
    assert first_trigger(0.9) == 13
    assert detect_correction(curve_at(12), 0.9) is None
    assert detect_correction(curve_at(13), 0.9) == 13


def test_threshold_one_never_fires():
    assert first_trigger(1.0) is None


def test_monotone_in_threshold():
    previous = None
    for r in (0.95, 0.9, 0.7, 0.5, 0.2):
        t = first_trigger(r)
        if previous is not None:
            assert t <= previous
        previous = t


def test_correct_once():
    curve = curve_at(20)
    assert detect_correction(curve, 0.9) == 20
    curve.mark_corrected(20)
    assert detect_correction(curve, 0.9) is None
    assert detect_correction(curve, 0.9, correct_once=False) == 20
    assert detect_correction(curve, 0.9, mode='each-down') == 20


def test_each_down_needs_a_decreasing_derivative():
    # b > 1 has a rising derivative before its maximum
    params = CurveFitParams(0.8, 3, 1000)
    assert derivative_drop(params, 5) > 0.9
    assert detect_correction(curve_at(5, params), 0.9, mode='once') == 5
    assert detect_correction(curve_at(5, params), 0.9,
                             mode='each-down') is None


def test_flat_curve():
    curve = LearningCurve('s', np.zeros(6))
    curve.refit()
    with raises(CorrectionTriggerError):
        detect_correction(curve, 0.9)


def test_no_fit_and_bad_mode():
    curve = LearningCurve('s', [0.1, 0.2])
    assert curve.refit() is None
    with raises(ValueError):
        detect_correction(curve, 0.9)
    with raises(ValueError):
        detect_correction(curve_at(5), 0.9, mode='always')


def test_learning_curve_bookkeeping():
    params = CurveFitParams(0.6, 1, 3)
    curve = LearningCurve('abc')
    for t in range(1, 11):
        curve.append(eval_curve(params, t))
    assert curve.epoch == 10
    fit = curve.refit()
    assert abs(fit.a - 0.6) < 1e-3
    state = curve.to_dict()
    assert state['sample_id'] == 'abc'
    assert len(state['miou_series']) == 10
    assert state['corrected'] is False
    with raises(ValueError):
        curve.append(1.5)
