# Licensed under a 3-clause BSD style license - see LICENSE.rst

from .exceptions import ConfigValidationError

__all__ = ['dictKeysUnknown', 'dictCheckKeys']


def dictKeysUnknown(dictionary, allowed):
    """
    Returns the keys of a dict that are not in a list of allowed keys.

    Parameters
    ----------
    dictionary : `dict`-like
        The dict to check.

    allowed : ``iterable``
        The allowed keys.

    Returns
    -------
    unknown : `list`
        The keys of ``dictionary`` that are not ``allowed``, in the order of
        the ``dictionary``.
    """
    allowed = set(allowed)
    return [key for key in dictionary if key not in allowed]


def dictCheckKeys(dictionary, allowed, where='configuration'):
    """
    Identical to :func:`dictKeysUnknown` but raises if any key is unknown.

    Parameters
    ----------
    where : `str`, optional
        Used in the error message to say which section was checked.
        Default is ``"configuration"``.

    Raises
    ------
    ConfigValidationError
        If at least one key is not allowed.
    """
    unknown = dictKeysUnknown(dictionary, allowed)
    if unknown:
        raise ConfigValidationError(
            'Unknown key(s) {0} in {1}. Allowed are: {2}.'
            ''.format(', '.join(repr(k) for k in unknown), where,
                      ', '.join(sorted(allowed))))
