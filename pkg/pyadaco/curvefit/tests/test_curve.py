# Licensed under a 3-clause BSD style license - see LICENSE.rst

import sys

import numpy as np
from numpy.testing import assert_allclose

from .. import (CurveFitParams, eval_curve, eval_derivative, fit_curve,
                START_GRID)
from ..curve import _levenberg_marquardt
from ...utils.exceptions import CurveFitError

from pytest import raises


def test_eval_curve():
    p = CurveFitParams(0.8, 1, 5)
    assert_allclose(eval_curve(p, 5), 0.8 * (1 - np.exp(-1)))
    assert_allclose(eval_curve(p, 1e4), 0.8)
    assert_allclose(eval_curve(CurveFitParams(0, 1.3, 2), [1, 10, 100]), 0)


def test_curve_monotone_and_bounded(rng):
    t = np.arange(1, 200)
    for _ in range(20):
        p = CurveFitParams(rng.uniform(0, 1), rng.uniform(0, 3),
                           rng.uniform(0.1, 50))
        f = eval_curve(p, t)
        assert np.all(np.diff(f) >= 0)
        assert np.all(f <= p.a)


def test_eval_derivative():
    p = CurveFitParams(0.8, 1, 5)
    assert_allclose(eval_derivative(p, 1), 0.16 * np.exp(-0.2))
    assert np.all(np.diff(eval_derivative(p, np.arange(1, 30))) < 0)


def test_derivative_finite_difference(rng):
    h = 1e-5
    for _ in range(30):
        p = CurveFitParams(rng.uniform(0.1, 1), rng.uniform(0.2, 2.5),
                           rng.uniform(0.5, 30))
        t = rng.uniform(1.5, 30)
        numeric = (eval_curve(p, t + h) - eval_curve(p, t - h)) / (2 * h)
        assert_allclose(eval_derivative(p, t), numeric, rtol=1e-6,
                        atol=1e-12)


def test_epochs_start_at_one():
    with raises(ValueError):
        eval_curve(CurveFitParams(0.5, 1, 1), 0)


def test_params_checked():
    with raises(ValueError):
        CurveFitParams(1.5, 1, 1)
    with raises(ValueError):
        CurveFitParams(0.5, -1, 1)
    with raises(ValueError):
        CurveFitParams(0.5, 1, 0)


def test_fit_noiseless():
    truth = CurveFitParams(0.8, 1.2, 4)
    series = eval_curve(truth, np.arange(1, 41))
    fit = fit_curve(series)
    assert_allclose([fit.a, fit.b, fit.c], [0.8, 1.2, 4], atol=1e-3)
    assert fit.residual <= 1e-8


def test_fit_recovers_random_params(rng):
    t = np.arange(1, 41)
    for _ in range(50):
        truth = CurveFitParams(rng.uniform(0.2, 1), rng.uniform(0.8, 1.6),
                               rng.uniform(1, 10))
        fit = fit_curve(eval_curve(truth, t))
        assert_allclose([fit.a, fit.b, fit.c], [truth.a, truth.b, truth.c],
                        atol=1e-3)


def test_fit_constant_zero():
    fit = fit_curve(np.zeros(10))
    assert fit.a == 0
    assert fit.residual == 0


def test_fit_noisy(rng):
    truth = CurveFitParams(0.7, 1, 6)
    series = eval_curve(truth, np.arange(1, 41))
    series = np.clip(series + rng.uniform(-0.01, 0.01, series.size), 0, 1)
    fit = fit_curve(series)
    assert abs(fit.a - 0.7) <= 0.05


def test_fit_not_worse_than_starts(rng):
    t = np.arange(1, 25)
    series = np.clip(0.6 * (1 - np.exp(-t / 3.)) +
                     rng.normal(0, 0.03, t.size), 0, 1)
    fit = fit_curve(series)
    for a, b, c in START_GRID:
        start = ((eval_curve(CurveFitParams(a, b, c), t) - series) ** 2).sum()
        assert fit.residual <= start


def test_fit_deterministic(rng):
    series = rng.uniform(0, 1, 15)
    assert fit_curve(series) == fit_curve(series)


def test_fit_input_checked():
    with raises(ValueError):
        fit_curve([0.1, 0.2])
    with raises(ValueError):
        fit_curve([0.1, 0.2, 1.2])


def test_fit_without_starts():
    with raises(CurveFitError):
        fit_curve(np.full(5, 0.5), starts=())


def test_fit_all_starts_diverge(monkeypatch):
    module = sys.modules['pyadaco.curvefit.curve']
    calls = []

    def diverging(t, y, a, b, c, bounds, max_iter, xtol):
        calls.append((a, b, c))
        return a, b, c, np.nan, 1

    monkeypatch.setattr(module, '_levenberg_marquardt', diverging)
    with raises(CurveFitError):
        fit_curve(np.full(5, 0.5))
    assert len(calls) == len(START_GRID)


def test_singular_steps_are_rejected():
    t = np.arange(1., 6.)
    y = np.array([0.1, np.nan, 0.3, 0.4, 0.5])
    bounds = np.array([[0., 1.], [0., 10.], [1e-6, 1e8]])
    a, b, c, residual, iterations = _levenberg_marquardt(
        t, y, 0.5, 1., 5., bounds, 50, 1e-10)
    assert (a, b, c) == (0.5, 1., 5.)
    assert np.isnan(residual)
    assert iterations == 1
