# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np

from .transform import check_rigid, IDENTITY
from .vocabulary import check_labels, UNLABELED

__all__ = ['Camera', 'LabelMap2D']


class Camera(object):
    """
    Pinhole camera.

    Parameters
    ----------
    fx, fy : `float`
        Focal lengths in pixels, must be positive.

    cx, cy : `float`
        Principal point in pixels.

    extrinsic : `numpy.ndarray` or ``None``, optional
        4x4 rigid transformation from the sample frame to the camera frame
        (x right, y down, z forward). ``None`` means identity.
        Default is ``None``.

    Raises
    ------
    ValueError
        If a parameter is not finite, a focal length is not positive or the
        extrinsic is not rigid.
    """

    def __init__(self, fx, fy, cx, cy, extrinsic=None):
        values = np.array([fx, fy, cx, cy], dtype=np.float64)
        if not np.all(np.isfinite(values)):
            raise ValueError('camera intrinsics must be finite.')
        if values[0] <= 0 or values[1] <= 0:
            raise ValueError('focal lengths must be positive, got fx={0}, '
                             'fy={1}.'.format(fx, fy))
        self.fx, self.fy, self.cx, self.cy = (float(v) for v in values)
        extrinsic = (IDENTITY.copy() if extrinsic is None
                     else check_rigid(extrinsic, 'extrinsic'))
        extrinsic.setflags(write=False)
        self.extrinsic = extrinsic

    def __repr__(self):
        return 'Camera(fx={0}, fy={1}, cx={2}, cy={3})'.format(
            self.fx, self.fy, self.cx, self.cy)

    def with_extrinsic(self, extrinsic):
        """A copy of the camera with another extrinsic."""
        return Camera(self.fx, self.fy, self.cx, self.cy, extrinsic)

    def to_dict(self):
        """
        The calibration as stored in the sidecar JSON of a label map.
        """
        return {'intrinsics': {'fx': self.fx, 'fy': self.fy,
                               'cx': self.cx, 'cy': self.cy},
                'extrinsic': [float(v) for v in self.extrinsic.ravel()]}

    @classmethod
    def from_dict(cls, calibration):
        """
        Inverse of :meth:`to_dict`.

        Raises
        ------
        KeyError
            If a key is missing.
        """
        intrinsics = calibration['intrinsics']
        return cls(intrinsics['fx'], intrinsics['fy'], intrinsics['cx'],
                   intrinsics['cy'],
                   np.array(calibration['extrinsic'],
                            dtype=np.float64).reshape(4, 4))

    def project(self, points):
        """
        Projects sample-frame points.

        Parameters
        ----------
        points : `numpy.ndarray`
            Shape ``(N, 3)``.

        Returns
        -------
        u, v, z : `numpy.ndarray`
            Pixel coordinates ``u = fx x / z + cx``, ``v = fy y / z + cy``
            and the depth ``z`` in the camera frame. ``u`` and ``v`` are
            ``nan`` where ``z <= 0``.
        """
        points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
        cam = points.dot(self.extrinsic[:3, :3].T) + self.extrinsic[:3, 3]
        z = cam[:, 2]
        front = z > 0
        u = np.full(z.shape, np.nan)
        v = np.full(z.shape, np.nan)
        u[front] = self.fx * cam[front, 0] / z[front] + self.cx
        v[front] = self.fy * cam[front, 1] / z[front] + self.cy
        return u, v, z


class LabelMap2D(object):
    """
    Class-indexed 2D label image of one camera view.

    Parameters
    ----------
    labels : `numpy.ndarray`
        Shape ``(H, W)``; every entry a class index or
        `~pyadaco.scene.UNLABELED`.

    camera : `Camera`
        The camera that took the image.

    num_classes : `int` or ``None``, optional
        If given, labels are range-checked against ``K``; otherwise only
        against the 16 bit range. Default is ``None``.

    Raises
    ------
    ValueError
        If ``labels`` is not two-dimensional.

    LabelRangeError
        If a label is out of range.
    """

    def __init__(self, labels, camera, num_classes=None):
        if not isinstance(camera, Camera):
            raise TypeError('camera must be a Camera, got {0}.'.format(
                camera.__class__.__name__))
        labels = np.asarray(labels)
        if labels.ndim != 2:
            raise ValueError('label maps must be 2D, got shape {0}.'
                             ''.format(labels.shape))
        shape = labels.shape
        flat = check_labels(labels, UNLABELED if num_classes is None
                            else num_classes, 'label map')
        labels = flat.reshape(shape)
        labels.setflags(write=False)
        self.labels = labels
        self.camera = camera

    def __repr__(self):
        return '<LabelMap2D {0}x{1}>'.format(self.width, self.height)

    @property
    def width(self):
        """(`int`) ``W`` in pixels."""
        return self.labels.shape[1]

    @property
    def height(self):
        """(`int`) ``H`` in pixels."""
        return self.labels.shape[0]
