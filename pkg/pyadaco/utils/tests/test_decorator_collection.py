# Licensed under a 3-clause BSD style license - see LICENSE.rst

from ..decorator_collection import lazyproperty_readonly, format_doc

from pytest import raises


class Cached(object):
    calls = 0

    @lazyproperty_readonly
    def value(self):
        Cached.calls += 1
        return 100


class CachedWithSetter(object):
    @lazyproperty_readonly
    def value(self):
        return 100

    @value.setter
    def value(self, new):
        self.__dict__['value'] = new


def test_lazyprop_ro_caches():
    Cached.calls = 0
    obj = Cached()
    assert obj.value == 100
    assert obj.value == 100
    assert Cached.calls == 1


def test_lazyprop_ro_readonly():
    obj = Cached()
    with raises(AttributeError):
        obj.value = 10
    assert obj.value == 100
    with raises(AttributeError):
        del obj.value
    assert obj.value == 100


def test_lazyprop_ro_ignores_setter():
    obj = CachedWithSetter()
    with raises(AttributeError):
        obj.value = 10
    assert obj.value == 100


def test_lazyprop_ro_class_access():
    assert isinstance(Cached.value, lazyproperty_readonly)


def test_format_doc_string():
    @format_doc('Computes the {0}.', 'loss')
    def func():
        pass
    assert func.__doc__ == 'Computes the loss.'


def test_format_doc_keeps_own_doc():
    @format_doc('Computes the {0}. {__doc__}', 'loss')
    def func():
        """Bounded."""
    assert func.__doc__ == 'Computes the loss. Bounded.'


def test_format_doc_self():
    @format_doc('__doc__', name='mae')
    def func():
        """Docs of {name}."""
    assert func.__doc__ == 'Docs of mae.'


def test_format_doc_from_object():
    def template():
        """From {0}."""

    @format_doc(template, 'template')
    def func():
        pass
    assert func.__doc__ == 'From template.'


def test_format_doc_empty():
    with raises(ValueError):
        @format_doc('')
        def func():
            pass

    def nodoc():
        pass

    with raises(ValueError):
        @format_doc(nodoc)
        def func2():
            pass
