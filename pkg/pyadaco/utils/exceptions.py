# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
Exceptions and warnings raised by pyadaco.

All error classes derive from `ValueError` (except the training divergence,
which is a `RuntimeError`) so that callers that only care about bad input can
keep catching `ValueError`.
"""

from astropy.utils.exceptions import AstropyUserWarning

__all__ = ['AdaCoWarning', 'SceneFormatError', 'LabelRangeError',
           'LengthMismatchError', 'GroundFitError', 'CurveFitError',
           'CorrectionTriggerError', 'EmptyBatchError',
           'MetricUndefinedError', 'ConfigValidationError',
           'TrainingDivergedError']


class AdaCoWarning(AstropyUserWarning):
    """
    Recoverable problems, e.g. a sample whose learning curve could not be
    fitted in this epoch.
    """


class SceneFormatError(ValueError):
    """
    A scene, label map or calibration file does not follow the file layout.
    """


class LabelRangeError(SceneFormatError):
    """
    A label is neither a class index in ``[0, K)`` nor the unlabeled id.
    """


class LengthMismatchError(SceneFormatError):
    """
    Per-point arrays of one scene do not have the same length.
    """


class GroundFitError(ValueError):
    """
    Every RANSAC iteration drew a degenerate (collinear) triplet.
    """


class CurveFitError(ValueError):
    """
    Every start of the learning-curve fit diverged.
    """


class CorrectionTriggerError(ValueError):
    """
    The correction trigger is undefined because ``f'(1) = 0``.
    """


class EmptyBatchError(ValueError):
    """
    All targets of a batch are ignored.
    """


class MetricUndefinedError(ValueError):
    """
    No class contributes to a mean metric.
    """


class ConfigValidationError(ValueError):
    """
    A run configuration contains unknown keys or invalid values.
    """


class TrainingDivergedError(RuntimeError):
    """
    The training loss became non-finite.
    """
