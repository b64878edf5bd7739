# Licensed under a 3-clause BSD style license - see LICENSE.rst

import re
from collections import OrderedDict

import numpy as np
from astropy.utils.data import get_pkg_data_filename

from ..scene import ClassVocabulary, LabelMap2D, UNLABELED
from ..utils.json_io import json_read

__all__ = ['LabelDictionary', 'map_description', 'map_descriptions',
           'labelmap_from_segments', 'tokenize', 'BUILTIN_DICTIONARIES']

BUILTIN_DICTIONARIES = ('semantickitti', 'nuscenes')
"""Names of the dictionaries shipped with the package."""

_TOKEN = re.compile(r'[a-z0-9]+(?:-[a-z0-9]+)*')


def tokenize(text):
    """
    Lowercase word tokens of a text; hyphenated words stay one token.

    Examples
    --------
    >>> from pyadaco.labelgen import tokenize
    >>> tokenize('A semi-trailer, parked.')
    ('a', 'semi-trailer', 'parked')
    """
    return tuple(_TOKEN.findall(text.lower()))


class LabelDictionary(object):
    """
    Mapping of synonyms to class indices.

    Parameters
    ----------
    entries : `dict`
        Synonym (one or more words) to class index.

    vocabulary : `~pyadaco.scene.ClassVocabulary` or iterable of `str`
        The classes the indices refer to.

    Raises
    ------
    ValueError
        If an index is not a class of the vocabulary, a synonym has no word
        or two synonyms have the same words.
    """

    def __init__(self, entries, vocabulary):
        if not isinstance(vocabulary, ClassVocabulary):
            vocabulary = ClassVocabulary(vocabulary)
        self.vocabulary = vocabulary
        phrases = OrderedDict()
        for synonym, index in entries.items():
            index = int(index)
            if not 0 <= index < vocabulary.K:
                raise ValueError('synonym {0!r} maps to {1}, not a class '
                                 'index.'.format(synonym, index))
            tokens = tokenize(synonym)
            if not tokens:
                raise ValueError('synonym {0!r} contains no word.'.format(
                    synonym))
            if tokens in phrases:
                raise ValueError('synonym {0!r} is not unique.'.format(
                    synonym))
            phrases[tokens] = index
        self._phrases = phrases
        self._longest = max((len(p) for p in phrases), default=0)

    @property
    def entries(self):
        """(`dict`) Normalized synonym to class index."""
        return {' '.join(tokens): index
                for tokens, index in self._phrases.items()}

    def __len__(self):
        return len(self._phrases)

    @classmethod
    def from_classes(cls, mapping, vocabulary=None):
        """
        Creates the dictionary from class names with their synonym lists.

        Parameters
        ----------
        mapping : `dict`
            Class name to list of synonyms.

        vocabulary : `~pyadaco.scene.ClassVocabulary` or ``None``, optional
            The class order. ``None`` uses the order of ``mapping``.
            Default is ``None``.
        """
        if vocabulary is None:
            vocabulary = ClassVocabulary(list(mapping))
        entries = OrderedDict()
        for name, synonyms in mapping.items():
            index = vocabulary.index(name)
            for synonym in synonyms:
                if synonym in entries:
                    raise ValueError('synonym {0!r} is listed twice.'.format(
                        synonym))
                entries[synonym] = index
        return cls(entries, vocabulary)

    def to_classes(self):
        """
        Inverse of :meth:`from_classes`, every class listed.
        """
        mapping = OrderedDict((name, []) for name in self.vocabulary)
        for tokens, index in self._phrases.items():
            mapping[self.vocabulary.name(index)].append(' '.join(tokens))
        return mapping

    @classmethod
    def load(cls, name_or_filename, vocabulary=None):
        """
        Reads a dictionary JSON file (class name to synonym list).

        Parameters
        ----------
        name_or_filename : `str`
            One of `BUILTIN_DICTIONARIES` or a filename.

        vocabulary : `~pyadaco.scene.ClassVocabulary` or ``None``, optional
            Passed to :meth:`from_classes`. Default is ``None``.
        """
        if name_or_filename in BUILTIN_DICTIONARIES:
            filename = get_pkg_data_filename(
                'data/{0}.json'.format(name_or_filename), package='pyadaco')
        else:
            filename = name_or_filename
        mapping = json_read(filename)
        if not isinstance(mapping, dict):
            raise ValueError('{0} must contain a JSON object of class names '
                             'and synonym lists.'.format(filename))
        return cls.from_classes(OrderedDict(mapping), vocabulary)

    def matches(self, text):
        """
        Class indices of all synonyms found in a text.

        The tokens are scanned left to right; at each position the longest
        synonym starting there is taken and the scan continues after it.

        Returns
        -------
        classes : `list` of `int`
            In order of occurrence.
        """
        tokens = tokenize(text)
        found = []
        position = 0
        while position < len(tokens):
            for length in range(min(self._longest, len(tokens) - position),
                                0, -1):
                phrase = tokens[position:position + length]
                if phrase in self._phrases:
                    found.append(self._phrases[phrase])
                    position += length
                    break
            else:
                position += 1
        return found


def _most_frequent(found):
    if not found:
        return UNLABELED
    counts = {}
    for index in found:
        counts[index] = counts.get(index, 0) + 1
    best = max(counts.values())
    # first occurrence among the most frequent
    return next(index for index in found if counts[index] == best)


def map_description(text, dictionary):
    """
    Maps a free-text description to a class.

    Parameters
    ----------
    text : `str`
        The description, e.g. ``"a tree trunk next to the road"``.

    dictionary : `LabelDictionary`
        The synonyms.

    Returns
    -------
    label : `int`
        The most frequently matched class (ties go to the class matched
        first) or `~pyadaco.scene.UNLABELED` without any match.

    Notes
    -----
    Matching is case-insensitive on whole words, longest synonym first, so
    ``"tree trunk"`` matches the synonym ``"tree trunk"`` and not ``"tree"``.
    """
    return _most_frequent(dictionary.matches(text))


def map_descriptions(texts, dictionary):
    """
    Maps several ranked descriptions of the same segment to one class.

    Parameters
    ----------
    texts : iterable of `str`
        Descriptions, best first.

    dictionary : `LabelDictionary`
        The synonyms.

    Returns
    -------
    label : `int`
        The class that most descriptions map to (descriptions without match
        do not vote), ties going to the better ranked description, or
        `~pyadaco.scene.UNLABELED`.
    """
    found = [label for label in (map_description(text, dictionary)
                                 for text in texts)
             if label != UNLABELED]
    return _most_frequent(found)


def labelmap_from_segments(segments, descriptions, dictionary, camera):
    """
    Turns a class-agnostic segmentation into a class-indexed label map.

    Parameters
    ----------
    segments : `numpy.ndarray`
        ``(H, W)`` integer segment id per pixel; negative ids mark pixels
        outside any segment.

    descriptions : `dict`
        Segment id to a description or a list of ranked descriptions.
        Segments without entry stay unlabeled.

    dictionary : `LabelDictionary`
        The synonyms.

    camera : `~pyadaco.scene.Camera`
        The camera of the image.

    Returns
    -------
    labelmap : `~pyadaco.scene.LabelMap2D`
    """
    segments = np.asarray(segments)
    if segments.ndim != 2:
        raise ValueError('segments must be a 2D array.')
    labels = np.full(segments.shape, UNLABELED, dtype=np.int64)
    for segment, text in descriptions.items():
        texts = [text] if isinstance(text, str) else list(text)
        labels[segments == segment] = map_descriptions(texts, dictionary)
    labels[segments < 0] = UNLABELED
    return LabelMap2D(labels, camera, dictionary.vocabulary.K)
