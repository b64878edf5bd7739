# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np
from numpy.testing import assert_allclose

from .. import (LossConfig, LogitsBatch, ArlState, arl, combine_terms,
                term_weights, softmax_ce, lovasz_softmax, nce, mae)

from pytest import raises


def test_combine_warmup():
    terms = {'ce': 0.7, 'lovasz': 0.2}
    assert_allclose(combine_terms(terms, LossConfig(), 'warmup'), 0.9)


def test_combine_correction():
    terms = {'ce': 1.0, 'lovasz': 0.2, 'mse': 0., 'nce': 0.3, 'mae': 0.6}
    assert_allclose(combine_terms(terms, LossConfig(), 'correction'), 30.81)


def test_sigma_cancels_ce():
    weights = term_weights(LossConfig(sigma=-1), 'correction')
    assert weights['ce'] == 0
    terms = {'ce': 5., 'nce': 0.1, 'mae': 0.1, 'lovasz': 0.}
    assert_allclose(combine_terms(terms, LossConfig(sigma=-1), 'correction'),
                    100 * 0.1 + 0.1)


def test_arl_matches_components(rng):
    z = rng.normal(size=(8, 4))
    targets = rng.integers(0, 4, 8)
    batch = LogitsBatch(z, targets)
    value, gradient, terms, _ = arl(batch, phase='warmup')
    assert_allclose(value, softmax_ce(batch)[0] + lovasz_softmax(batch)[0])
    assert_allclose(gradient,
                    softmax_ce(batch)[1] + lovasz_softmax(batch)[1])
    assert set(terms) == {'ce', 'lovasz'}
    value, gradient, terms, _ = arl(batch, phase='correction')
    expected = (100 * nce(batch)[1] + mae(batch)[1] +
                0.01 * softmax_ce(batch)[1] + lovasz_softmax(batch)[1])
    assert_allclose(gradient, expected)
    assert value >= 0


def test_arl_feature_term(rng):
    z = rng.normal(size=(4, 3))
    batch = LogitsBatch(z, [0, 1, 2, 0], np.zeros((4, 2)), np.ones((4, 2)))
    cfg = LossConfig(use_feature_mse=True)
    value, _, terms, feature_gradient = arl(batch, cfg)
    assert terms['mse'] == 1.
    assert_allclose(value, terms['ce'] + terms['lovasz'] + 1.)
    assert feature_gradient.shape == (4, 2)
    assert arl(batch)[3] is None


def test_state_switches_once():
    state = ArlState()
    assert state.phase == 'warmup'
    state.switch(12)
    state.switch(20)
    assert state.phase == 'correction'
    assert state.switched_at == 12
    batch = LogitsBatch(np.zeros((2, 3)), [0, 1])
    value, _ = state.evaluate(batch)
    assert set(state.terms) == {'ce', 'lovasz', 'nce', 'mae'}
    assert value > 0


def test_bad_phase():
    with raises(ValueError):
        term_weights(LossConfig(), 'late')
    with raises(ValueError):
        LossConfig(lam=np.inf)
