# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
Run configuration files.

A run configuration is an INI-style file with one section per pipeline
stage::

    [synth]
    n_scenes = 30
    classes = ground, car, building, vegetation, pole

    [noise]
    symmetric_rate = 0.3

    [labelgen]
    voxel_size = 0.05

    [corrector]
    r = 0.9

    [loss]
    lam = 100.0

    [train]
    epochs = 40

Every section and key is optional; missing values take their defaults.
Lists are comma separated, booleans ``true`` or ``false`` and missing
values ``none``. The confusion matrix of ``[noise]`` is given row by row as
one flat list.
"""

import numpy as np
from astropy.extern.configobj import configobj

from ..corrector import CorrectorConfig
from ..labelgen import LabelgenConfig
from ..loss import LossConfig
from ..synth import NoiseSpec, SynthConfig
from ..trainer import TrainConfig
from ..utils.dict_convenience import dictCheckKeys
from ..utils.exceptions import ConfigValidationError

__all__ = ['RunConfig', 'SECTIONS']

SECTIONS = ('synth', 'noise', 'labelgen', 'corrector', 'loss', 'train')

_TRUE = ('true', 'yes', 'on')
_FALSE = ('false', 'no', 'off')


def _parse(value):
    if isinstance(value, dict):
        return {key: _parse(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_parse(item) for item in value]
    text = value.strip()
    if text.lower() in _TRUE:
        return True
    if text.lower() in _FALSE:
        return False
    if text.lower() == 'none':
        return None
    for kind in (int, float):
        try:
            return kind(text)
        except ValueError:
            pass
    return text


def _format(value):
    if isinstance(value, dict):
        return {key: _format(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_format(item) for item in value]
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if value is None:
        return 'none'
    if isinstance(value, float):
        return repr(value)
    return str(value)


def parse_assignment(text):
    """
    Splits a ``section.key=value`` override.

    Raises
    ------
    ConfigValidationError
        If the text has another form.
    """
    name, sep, value = text.partition('=')
    section, dot, key = name.strip().partition('.')
    if not sep or not dot or not section or not key:
        raise ConfigValidationError('overrides must look like '
                                    'section.key=value, got {0!r}.'
                                    ''.format(text))
    if ',' in value:
        value = [item for item in value.split(',') if item.strip()]
    return section, key.strip(), _parse(value)


class RunConfig(object):
    """
    The complete configuration of a run.

    Parameters
    ----------
    synth : `~pyadaco.synth.SynthConfig` or ``None``, optional

    labelgen : `~pyadaco.labelgen.LabelgenConfig` or ``None``, optional

    train : `~pyadaco.trainer.TrainConfig` or ``None``, optional
        Includes the corrector and loss configurations.

    Missing configurations take their defaults.
    """

    def __init__(self, synth=None, labelgen=None, train=None):
        self.synth = SynthConfig() if synth is None else synth
        self.labelgen = LabelgenConfig() if labelgen is None else labelgen
        self.train = TrainConfig() if train is None else train

    def __repr__(self):
        return 'RunConfig(synth={0!r}, labelgen={1!r}, train={2!r})'.format(
            self.synth, self.labelgen, self.train)

    def __eq__(self, other):
        if not isinstance(other, RunConfig):
            return NotImplemented
        return self.to_sections() == other.to_sections()

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def to_sections(self):
        """
        The configuration as `dict` of sections (see `SECTIONS`).
        """
        synth = self.synth.to_dict()
        noise = synth.pop('noise')
        train = self.train.to_dict()
        corrector = train.pop('corrector')
        loss = train.pop('loss')
        return {'synth': synth, 'noise': noise,
                'labelgen': self.labelgen.to_dict(), 'corrector': corrector,
                'loss': loss, 'train': train}

    @classmethod
    def from_sections(cls, sections):
        """
        Creates the configuration from a (possibly partial) `dict` of
        sections.

        Raises
        ------
        ConfigValidationError
            If a section or key is unknown or a value is invalid.
        """
        dictCheckKeys(sections, SECTIONS, 'the run configuration')
        for name, section in sections.items():
            if not isinstance(section, dict):
                raise ConfigValidationError('[{0}] must be a section.'.format(
                    name))
        synth = dict(sections.get('synth', {}))
        noise = dict(sections.get('noise', {}))
        train = dict(sections.get('train', {}))
        if 'noise' in synth or 'corrector' in train or 'loss' in train:
            raise ConfigValidationError(
                'nested configurations need their own section.')
        try:
            confusion = noise.get('confusion')
            if confusion is not None and np.ndim(confusion) == 1:
                k = int(round(np.sqrt(len(confusion))))
                noise['confusion'] = np.reshape(confusion, (k, k))
            synth['noise'] = NoiseSpec.from_dict(noise, '[noise]')
            train['corrector'] = CorrectorConfig.from_dict(
                sections.get('corrector', {}), '[corrector]')
            train['loss'] = LossConfig.from_dict(sections.get('loss', {}),
                                                 '[loss]')
            return cls(SynthConfig.from_dict(synth, '[synth]'),
                       LabelgenConfig.from_dict(sections.get('labelgen', {}),
                                                '[labelgen]'),
                       TrainConfig.from_dict(train, '[train]'))
        except ConfigValidationError:
            raise
        except (ValueError, TypeError) as exc:
            raise ConfigValidationError('invalid configuration: {0}'.format(
                exc))

    @classmethod
    def read(cls, filename):
        """
        Reads a run configuration file.

        Raises
        ------
        ConfigValidationError
            If the file cannot be parsed or holds an invalid configuration.

        OSError
            If the file does not exist.
        """
        try:
            parsed = configobj.ConfigObj(filename, file_error=True,
                                         interpolation=False)
        except configobj.ConfigObjError as exc:
            raise ConfigValidationError('cannot parse {0}: {1}'.format(
                filename, exc))
        for key in parsed.scalars:
            raise ConfigValidationError('{0}: key {1!r} outside of a '
                                        'section.'.format(filename, key))
        return cls.from_sections(_parse(parsed.dict()))

    def override(self, assignments):
        """
        A copy with ``(section, key, value)`` assignments applied.
        """
        sections = self.to_sections()
        for section, key, value in assignments:
            if section not in sections:
                raise ConfigValidationError('unknown section [{0}].'.format(
                    section))
            sections[section][key] = value
        return self.from_sections(sections)

    def write(self, filename):
        """
        Writes the configuration in the format read by :meth:`read`.
        """
        sections = self.to_sections()
        confusion = sections['noise']['confusion']
        if confusion is not None:
            sections['noise']['confusion'] = np.ravel(confusion).tolist()
        output = configobj.ConfigObj(interpolation=False)
        output.filename = filename
        for name in SECTIONS:
            output[name] = _format(sections[name])
        output.write()
