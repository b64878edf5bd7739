# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np

__all__ = ['is_rigid', 'check_rigid', 'transform_points', 'invert_transform',
           'IDENTITY']

IDENTITY = np.eye(4)
IDENTITY.setflags(write=False)


def is_rigid(transform, atol=1e-6):
    """
    Checks if a 4x4 matrix is a rigid transformation.

    Parameters
    ----------
    transform : `numpy.ndarray`
        The matrix.

    atol : `float`, optional
        Absolute tolerance for ``R R^T = 1``, ``det R = 1`` and the last
        row ``(0, 0, 0, 1)``. Default is ``1e-6``.

    Returns
    -------
    rigid : `bool`
    """
    transform = np.asarray(transform, dtype=np.float64)
    if transform.shape != (4, 4) or not np.all(np.isfinite(transform)):
        return False
    rotation = transform[:3, :3]
    return bool(
        np.allclose(rotation.dot(rotation.T), np.eye(3), rtol=0, atol=atol) and
        abs(np.linalg.det(rotation) - 1) <= atol and
        np.allclose(transform[3], [0, 0, 0, 1], rtol=0, atol=atol))


def check_rigid(transform, name='transform'):
    """
    Returns ``transform`` as float64 array or raises if it is not rigid.

    Raises
    ------
    ValueError
        If :func:`is_rigid` is ``False``.
    """
    transform = np.array(transform, dtype=np.float64)
    if transform.size == 16:
        transform = transform.reshape(4, 4)
    if not is_rigid(transform):
        raise ValueError('{0} must be a rigid 4x4 transformation (orthonormal '
                         'rotation within 1e-6).'.format(name))
    return transform


def transform_points(points, transform):
    """
    Applies a rigid transformation to points.

    Parameters
    ----------
    points : `numpy.ndarray`
        Shape ``(N, 3)``.

    transform : `numpy.ndarray`
        4x4 rigid transformation ``[[R, t], [0, 1]]``.

    Returns
    -------
    transformed : `numpy.ndarray`
        ``R p + t`` for every point, shape ``(N, 3)``.

    Raises
    ------
    ValueError
        If the points contain non-finite coordinates or the transformation is
        not rigid.

    Examples
    --------
    A rotation by 90 degrees around z::

        >>> import numpy as np
        >>> from pyadaco.scene import transform_points
        >>> T = np.array([[0., -1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0],
        ...               [0, 0, 0, 1]])
        >>> transform_points([[1., 0, 0]], T).round(12) + 0.
        array([[0., 1., 0.]])
    """
    points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    transform = check_rigid(transform)
    if not np.all(np.isfinite(points)):
        raise ValueError('points contain non-finite coordinates.')
    return points.dot(transform[:3, :3].T) + transform[:3, 3]


def invert_transform(transform):
    """
    Inverse of a rigid transformation, ``[[R^T, -R^T t], [0, 1]]``.
    """
    transform = check_rigid(transform)
    inverse = np.eye(4)
    inverse[:3, :3] = transform[:3, :3].T
    inverse[:3, 3] = -transform[:3, :3].T.dot(transform[:3, 3])
    return inverse
