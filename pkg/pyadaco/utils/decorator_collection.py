# Licensed under a 3-clause BSD style license - see LICENSE.rst

__all__ = ['lazyproperty_readonly', 'format_doc']


class lazyproperty_readonly(property):
    """
    Like `astropy.utils.decorators.lazyproperty` but without setter or
    deleter.

    The decorated method is evaluated on first access and the result is
    stored in the instance ``__dict__`` under the method name, so later
    accesses return the cached value. Used for quantities derived from
    immutable data, for example the per-class IoU of a
    `~pyadaco.metrics.ConfusionMatrix` or the class count of a
    `~pyadaco.scene.ClassVocabulary`.
    """

    def __init__(self, fget, fset=None, fdel=None, doc=None):
        super(lazyproperty_readonly, self).__init__(fget, fset, fdel, doc)
        self._key = self.fget.__name__

    def __get__(self, obj, owner=None):
        if obj is None:
            return self
        try:
            return obj.__dict__[self._key]
        except KeyError:
            val = self.fget(obj)
            obj.__dict__[self._key] = val
            return val

    def __set__(self, obj, val):
        raise AttributeError("can't set attribute {0}".format(self._key))

    def __delete__(self, obj):
        raise AttributeError("can't delete attribute {0}".format(self._key))


def format_doc(docstring, *args, **kwargs):
    """
    Replaces the docstring of the decorated object and then formats it.

    The loss components share most of their documentation (inputs, the
    ``(value, gradient)`` return pair, the ignore rule) and only differ in
    the formula, so the shared part is written once and filled in with
    :meth:`str.format`. If the decorated function already has a docstring it
    is available as the ``{__doc__}`` placeholder.

    Parameters
    ----------
    docstring : `str` or object
        The new docstring. If it is not a string the ``__doc__`` of the object
        is used. The special value ``'__doc__'`` formats the decorated
        function's own docstring.

    args, kwargs :
        Passed to :meth:`str.format`.

    Raises
    ------
    ValueError
        If the (interpreted) ``docstring`` is empty.

    Examples
    --------
    ::

        >>> from pyadaco.utils import format_doc
        >>> template = '''Computes the {0} of a batch. {__doc__}'''
        >>> @format_doc(template, 'mean absolute error')
        ... def mae(batch):
        ...     '''Bounded by 2.'''
        ...     return 0.
        >>> mae.__doc__
        'Computes the mean absolute error of a batch. Bounded by 2.'
    """
    def set_docstring(func):
        if not isinstance(docstring, str):
            doc = docstring.__doc__
        elif docstring != '__doc__':
            doc = docstring
        else:
            doc = func.__doc__
            # Otherwise the formatted text would include itself.
            func.__doc__ = None

        if not doc:
            raise ValueError('docstring must be a string or containing a '
                             'docstring that is not empty.')

        kwargs['__doc__'] = func.__doc__ or ''
        func.__doc__ = doc.format(*args, **kwargs)
        return func
    return set_docstring
