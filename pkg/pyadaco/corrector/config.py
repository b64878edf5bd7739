# Licensed under a 3-clause BSD style license - see LICENSE.rst

from ..curvefit import TRIGGER_MODES
from ..utils.config_base import ConfigBase

__all__ = ['CorrectorConfig']


class CorrectorConfig(ConfigBase):
    """
    Parameters of the adaptive noise correction.

    Parameters
    ----------
    r : `float`, optional
        Derivative-drop threshold in ``(0, 1]``. Default is ``0.9``.

    gamma : `float`, optional
        Confidence threshold in ``[0, 1]``. Default is ``0.9``.

    t_m : `int`, optional
        Number of prediction rounds kept per point. Default is ``5``.

    omega : `float`, optional
        Winner-fraction divisor, at least 1. Every class with at least
        ``1 / omega`` of the votes of the most voted class may win.
        Default is ``3``.

    correct_once : `bool`, optional
        Correct every sample at most once. Default is ``True``.

    trigger_mode : {'once', 'each-down'}, optional
        See :func:`~pyadaco.curvefit.detect_correction`.
        Default is ``'once'``.

    eps, min_pts : optional
        DBSCAN radius in meters and density. Default is ``0.6`` and ``5``.

    block, stride : optional
        Edge and stride of the clustering blocks in meters. Default is
        ``10`` and ``None`` (equal to ``block``).

    ground_iterations, ground_tol : optional
        RANSAC iterations and inlier distance of the ground fit.
        Default is ``200`` and ``0.2``.

    freeze_ground : `bool`, optional
        Never change the labels of ground points. Default is ``False``.

    rng_seed : `int`, optional
        Seed of the winner draws. Default is ``0``.
    """

    _fields = ('r', 'gamma', 't_m', 'omega', 'correct_once', 'trigger_mode',
               'eps', 'min_pts', 'block', 'stride', 'ground_iterations',
               'ground_tol', 'freeze_ground', 'rng_seed')

    def __init__(self, r=0.9, gamma=0.9, t_m=5, omega=3., correct_once=True,
                 trigger_mode='once', eps=0.6, min_pts=5, block=10.,
                 stride=None, ground_iterations=200, ground_tol=0.2,
                 freeze_ground=False, rng_seed=0):
        self.r = float(r)
        if not 0 < self.r <= 1:
            raise ValueError('r must be in (0, 1], got {0}.'.format(r))
        self.gamma = float(gamma)
        if not 0 <= self.gamma <= 1:
            raise ValueError('gamma must be in [0, 1], got {0}.'.format(
                gamma))
        self.t_m = int(t_m)
        if self.t_m < 1:
            raise ValueError('t_m must be at least 1.')
        self.omega = float(omega)
        if not self.omega >= 1:
            raise ValueError('omega must be at least 1, got {0}.'.format(
                omega))
        self.correct_once = bool(correct_once)
        if trigger_mode not in TRIGGER_MODES:
            raise ValueError('trigger_mode must be one of {0}, got {1!r}.'
                             ''.format(TRIGGER_MODES, trigger_mode))
        self.trigger_mode = trigger_mode
        self.eps = float(eps)
        if not self.eps > 0:
            raise ValueError('eps must be positive.')
        self.min_pts = int(min_pts)
        if self.min_pts < 1:
            raise ValueError('min_pts must be at least 1.')
        self.block = float(block)
        self.stride = None if stride is None else float(stride)
        if not self.block > 0 or (self.stride is not None and
                                  not self.stride > 0):
            raise ValueError('block and stride must be positive.')
        self.ground_iterations = int(ground_iterations)
        self.ground_tol = float(ground_tol)
        if self.ground_iterations < 1 or not self.ground_tol > 0:
            raise ValueError('ground_iterations and ground_tol must be '
                             'positive.')
        self.freeze_ground = bool(freeze_ground)
        self.rng_seed = int(rng_seed)
