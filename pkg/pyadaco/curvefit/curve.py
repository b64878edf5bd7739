# Licensed under a 3-clause BSD style license - see LICENSE.rst

import itertools

import numpy as np
from astropy import log
from numba import jit

from ..utils.exceptions import CurveFitError

__all__ = ['CurveFitParams', 'eval_curve', 'eval_derivative', 'fit_curve',
           'PARAM_BOUNDS', 'START_GRID']

# box of (a, b, c); c > 0 keeps t**b / c finite
PARAM_BOUNDS = ((0., 1.), (0., 10.), (1e-6, 1e8))

START_GRID = tuple(itertools.product((0.25, 0.5, 0.75, 1.0),
                                     (0.5, 1., 2.),
                                     (1., 5., 20.)))


class CurveFitParams(object):
    """
    Parameters of the saturating learning curve
    ``f(t) = a (1 - exp(-t**b / c))``.

    Parameters
    ----------
    a : `float`
        Asymptote in ``[0, 1]``.

    b : `float`
        Non-negative exponent.

    c : `float`
        Positive scale.

    residual : `float`, optional
        Sum of squared errors of the fit. Default is ``nan`` (not fitted).

    Raises
    ------
    ValueError
        If a parameter is outside its range.
    """

    def __init__(self, a, b, c, residual=np.nan):
        a, b, c = float(a), float(b), float(c)
        if not 0 <= a <= 1:
            raise ValueError('a must be in [0, 1], got {0}.'.format(a))
        if not b >= 0:
            raise ValueError('b must be non-negative, got {0}.'.format(b))
        if not c > 0:
            raise ValueError('c must be positive, got {0}.'.format(c))
        self.a = a
        self.b = b
        self.c = c
        self.residual = float(residual)

    def __repr__(self):
        return 'CurveFitParams(a={0!r}, b={1!r}, c={2!r}, residual={3!r})' \
               ''.format(self.a, self.b, self.c, self.residual)

    def __eq__(self, other):
        if not isinstance(other, CurveFitParams):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def to_dict(self):
        return {'a': self.a, 'b': self.b, 'c': self.c,
                'residual': self.residual}


def _epochs(t):
    t = np.asarray(t, dtype=np.float64)
    if np.any(t < 1):
        raise ValueError('epochs start at 1.')
    return t


def eval_curve(p, t):
    """
    Evaluates ``a (1 - exp(-t**b / c))``.

    Parameters
    ----------
    p : `CurveFitParams`
        The curve.

    t : number or `numpy.ndarray`
        Epochs, ``t >= 1``.

    Returns
    -------
    f : number or `numpy.ndarray`

    Examples
    --------
    >>> from pyadaco.curvefit import CurveFitParams, eval_curve
    >>> round(float(eval_curve(CurveFitParams(0.8, 1, 5), 5)), 5)
    0.50569
    """
    t = _epochs(t)
    return p.a * -np.expm1(-t ** p.b / p.c)


def eval_derivative(p, t):
    """
    Derivative ``a (b / c) t**(b - 1) exp(-t**b / c)`` of the curve.

    Parameters
    ----------
    p : `CurveFitParams`
        The curve.

    t : number or `numpy.ndarray`
        Epochs, ``t >= 1``.

    Examples
    --------
    >>> from pyadaco.curvefit import CurveFitParams, eval_derivative
    >>> round(float(eval_derivative(CurveFitParams(0.8, 1, 5), 1)), 5)
    0.131
    """
    t = _epochs(t)
    return (p.a * p.b / p.c * t ** (p.b - 1) *
            np.exp(-t ** p.b / p.c))


@jit(nopython=True, nogil=True, cache=True)
def _clip(value, lower, upper):
    return min(max(value, lower), upper)


@jit(nopython=True, nogil=True, cache=True)
def _residual(t, y, a, b, c):
    total = 0.
    for i in range(t.shape[0]):
        d = a * (1 - np.exp(-t[i] ** b / c)) - y[i]
        total += d * d
    return total


@jit(nopython=True, nogil=True, cache=True)
def _levenberg_marquardt(t, y, a, b, c, bounds, max_iter, xtol):
    n = t.shape[0]
    jac = np.empty((n, 3))
    diff = np.empty(n)
    residual = _residual(t, y, a, b, c)
    damping = 1e-3
    step = np.zeros(3)
    for iteration in range(max_iter):
        for i in range(n):
            tb = t[i] ** b
            e = np.exp(-tb / c)
            jac[i, 0] = 1 - e
            jac[i, 1] = a * e * tb * np.log(t[i]) / c
            jac[i, 2] = -a * e * tb / (c * c)
            diff[i] = y[i] - a * (1 - e)
        jtj = jac.T.dot(jac)
        grad = jac.T.dot(diff)
        improved = False
        moved = 0.
        while damping < 1e16:
            m = jtj.copy()
            for k in range(3):
                m[k, k] += damping * max(jtj[k, k], 1e-12)
            solved = True
            try:
                step = np.linalg.solve(m, grad)
            except Exception:
                solved = False
            if not solved:
                # singular or non-finite system, rejected like a bad step
                damping *= 10
                continue
            na = _clip(a + step[0], bounds[0, 0], bounds[0, 1])
            nb = _clip(b + step[1], bounds[1, 0], bounds[1, 1])
            nc = _clip(c + step[2], bounds[2, 0], bounds[2, 1])
            trial = _residual(t, y, na, nb, nc)
            if np.isfinite(trial) and trial < residual:
                moved = np.sqrt((na - a) ** 2 + (nb - b) ** 2 +
                                (nc - c) ** 2)
                a, b, c, residual = na, nb, nc, trial
                damping = max(damping / 10, 1e-12)
                improved = True
                break
            damping *= 10
        if not improved or moved < xtol:
            return a, b, c, residual, iteration + 1
    return a, b, c, residual, max_iter


def fit_curve(series, max_iter=200, xtol=1e-10, starts=START_GRID):
    """
    Least-squares fit of the learning curve to a training-mIoU series.

    Parameters
    ----------
    series : array-like
        mIoU values in ``[0, 1]`` of epochs ``1, 2, ...``; at least 3.

    max_iter : `int`, optional
        Levenberg-Marquardt iterations per start. Default is ``200``.

    xtol : `float`, optional
        A start converged when an accepted step is shorter than this.
        Default is ``1e-10``.

    starts : sequence of ``(a, b, c)``, optional
        Initial guesses. Default is `START_GRID`.

    Returns
    -------
    params : `CurveFitParams`
        The lowest residual over all starts (the first one on ties).

    Raises
    ------
    ValueError
        If the series is shorter than 3 or has values outside ``[0, 1]``.

    CurveFitError
        If no start gives a finite residual.

    Notes
    -----
    Every start runs a Levenberg-Marquardt loop with the damping
    multiplied by 10 after a rejected step and divided by 10 after an
    accepted one; a damped system that cannot be solved counts as rejected.
    Parameters are clipped to `PARAM_BOUNDS` after every
    step and a step is accepted only if it lowers the residual, so the
    result is never worse than any of the starts.
    """
    y = np.asarray(series, dtype=np.float64).ravel()
    if y.size < 3:
        raise ValueError('fitting the curve needs at least 3 epochs, got '
                         '{0}.'.format(y.size))
    if not np.all((y >= 0) & (y <= 1)):
        raise ValueError('mIoU values must be in [0, 1].')
    t = np.arange(1, y.size + 1, dtype=np.float64)
    bounds = np.array(PARAM_BOUNDS)
    best = None
    for start in starts:
        a, b, c = [float(np.clip(v, *bound))
                   for v, bound in zip(start, PARAM_BOUNDS)]
        a, b, c, residual, iterations = _levenberg_marquardt(
            t, y, a, b, c, bounds, int(max_iter), float(xtol))
        if not np.isfinite(residual):
            continue
        if best is None or residual < best[3]:
            best = (a, b, c, residual)
    if best is None:
        raise CurveFitError('every start of the curve fit diverged.')
    log.debug('fitted curve a={0:.4f} b={1:.4f} c={2:.4f} to {3} epochs, '
              'residual {4:.3g}.'.format(best[0], best[1], best[2], y.size,
                                        best[3]))
    return CurveFitParams(*best)
