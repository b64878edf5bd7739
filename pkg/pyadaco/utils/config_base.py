# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np

from .dict_convenience import dictCheckKeys

__all__ = ['ConfigBase']


def _plain(value):
    if isinstance(value, ConfigBase):
        return value.to_dict()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    return value


class ConfigBase(object):
    """
    Base for the plain configuration classes of the subpackages.

    Subclasses validate their arguments in ``__init__`` and list the names
    of their fields in ``_fields``; every field must be stored as an
    attribute of the same name.
    """

    _fields = ()

    def to_dict(self):
        """
        The fields as `dict` of plain Python values (nested configurations
        become nested dicts, tuples become lists).
        """
        return {name: _plain(getattr(self, name)) for name in self._fields}

    @classmethod
    def from_dict(cls, dictionary, where=None):
        """
        Creates an instance from a (possibly partial) dict.

        Parameters
        ----------
        dictionary : `dict`-like
            Field values; missing fields take their defaults.

        where : `str` or ``None``, optional
            Name used in error messages. Default is the class name.

        Raises
        ------
        ConfigValidationError
            If the dict contains unknown keys.

        ValueError
            If a value is invalid.
        """
        dictCheckKeys(dictionary, cls._fields, where or cls.__name__)
        return cls(**dictionary)

    def replace(self, **changes):
        """A copy with some fields changed (and validated again)."""
        kwargs = {name: getattr(self, name) for name in self._fields}
        kwargs.update(changes)
        return self.__class__(**kwargs)

    def __eq__(self, other):
        if not isinstance(other, self.__class__):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def __repr__(self):
        return '{0}({1})'.format(
            self.__class__.__name__,
            ', '.join('{0}={1!r}'.format(name, getattr(self, name))
                      for name in self._fields))
