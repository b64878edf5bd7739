# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
The ``adaco`` command.

Exit codes are ``0`` on success, ``1`` for invalid arguments or
configurations and ``2`` if a pipeline fails.
"""

import argparse
import os
import sys

import numpy as np
from astropy import log
from astropy.table import Table

from .config import RunConfig, parse_assignment
from ..curvefit import (LearningCurve, eval_derivative, first_trigger_epoch,
                        TRIGGER_MODES)
from ..history import PredictionHistory, read_history
from ..labelgen import LabelDictionary, generate_labels, read_views
from ..labelgen.unproject import UNPROJECT_MODES
from ..metrics import emit_report, label_quality, read_curves
from ..scene import read_scene, write_scene, list_scenes, META_FILE
from ..synth import write_dataset
from ..trainer import (train, evaluate, write_run, read_checkpoint,
                       LOSS_MODES, MODEL_FILE)
from ..utils.exceptions import ConfigValidationError
from ..utils.parallel import default_threads

__all__ = ['main', 'build_parser', 'CONFIG_FILE']

CONFIG_FILE = 'config.cfg'


class UsageError(Exception):
    """Invalid command line."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, 1 is the code for bad input here
    def error(self, message):
        raise UsageError('{0}\n{1}'.format(self.format_usage().strip(),
                                           message))


def _common(parser):
    parser.add_argument('--config', metavar='FILE',
                        help='run configuration file')
    parser.add_argument('--set', metavar='SECTION.KEY=VALUE',
                        action='append', default=[], dest='overrides',
                        help='override one configuration value, repeatable')
    parser.add_argument('--seed', type=int,
                        help='seed of every random draw')
    parser.add_argument('--threads', type=int,
                        help='worker threads (default: PYADACO_THREADS or '
                             'the pyadaco configuration)')


def build_parser():
    """
    The argument parser of the ``adaco`` command.
    """
    parser = _Parser(prog='adaco', description='Label-free point cloud '
                     'segmentation with adaptive noise correction.')
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    synth = sub.add_parser('synth', help='generate synthetic scenes')
    _common(synth)
    synth.add_argument('--out', required=True, help='output directory')
    synth.add_argument('--scenes', type=int, help='number of scenes')
    synth.add_argument('--noise', type=float,
                       help='symmetric label noise rate')

    labelgen = sub.add_parser('labelgen',
                              help='label points from 2D label maps')
    _common(labelgen)
    labelgen.add_argument('--scenes', required=True, dest='scene_dir',
                          help='directory of scene directories (frames in '
                               'name order)')
    labelgen.add_argument('--maps', required=True,
                          help='directory of view directories per frame')
    labelgen.add_argument('--dict', dest='dictionary',
                          help='built-in dictionary name or JSON file')
    labelgen.add_argument('--voxel', type=float, help='voxel size in meters')
    labelgen.add_argument('--adjacency', type=int,
                          help='voting frames on each side')
    labelgen.add_argument('--mode', choices=UNPROJECT_MODES,
                          help='unprojection mode')
    labelgen.add_argument('--out', required=True, help='output directory')

    training = sub.add_parser('train', help='train with noise correction')
    _common(training)
    training.add_argument('--data', required=True,
                          help='dataset directory (with scenes/)')
    training.add_argument('--out', required=True, help='output directory')
    training.add_argument('--epochs', type=int, help='number of epochs')
    training.add_argument('--loss', choices=LOSS_MODES, dest='loss_mode',
                          help='training loss')
    training.add_argument('--no-correction', action='store_true',
                          help='train without label correction')

    evaluation = sub.add_parser('evaluate',
                                help='evaluate a model and write a report')
    _common(evaluation)
    evaluation.add_argument('--run', required=True,
                            help='training output directory')
    evaluation.add_argument('--data', required=True,
                            help='dataset directory with clean labels')
    evaluation.add_argument('--out', help='report directory (default: the '
                                          'training output directory)')

    fit = sub.add_parser('fit-curve',
                         help='fit a learning curve and find its trigger')
    fit.add_argument('csv', help='CSV file with the columns epoch and miou')
    fit.add_argument('--r', type=float, default=0.9,
                     help='derivative drop threshold (default: 0.9)')

    inspect = sub.add_parser('inspect',
                             help='summarize a scene, run or history dump')
    inspect.add_argument('path', help='scene directory, training output '
                                      'directory or history dump')
    inspect.add_argument('--classes', type=int,
                         help='number of classes of a history dump')
    return parser


def _run_config(args, fallback=None):
    filename = args.config
    if filename is None and fallback is not None and os.path.isfile(fallback):
        filename = fallback
    if filename is None:
        cfg = RunConfig()
    elif not os.path.isfile(filename):
        raise ConfigValidationError('no configuration file {0}.'.format(
            filename))
    else:
        cfg = RunConfig.read(filename)
    assignments = [parse_assignment(text) for text in args.overrides]
    flags = {'synth': [('n_scenes', 'scenes')],
             'noise': [('symmetric_rate', 'noise')],
             'labelgen': [('voxel_size', 'voxel'),
                          ('adjacency', 'adjacency'), ('mode', 'mode'),
                          ('dictionary', 'dictionary')],
             'train': [('epochs', 'epochs'), ('loss_mode', 'loss_mode')]}
    for section, pairs in flags.items():
        for key, flag in pairs:
            value = getattr(args, flag, None)
            if value is not None:
                assignments.append((section, key, value))
    if getattr(args, 'no_correction', False):
        assignments.append(('train', 'use_correction', False))
    if args.seed is not None:
        assignments += [('synth', 'rng_seed', args.seed),
                        ('train', 'seed', args.seed),
                        ('corrector', 'rng_seed', args.seed)]
    return cfg.override(assignments)


def _threads(args):
    threads = default_threads() if args.threads is None else args.threads
    if threads < 1:
        raise ConfigValidationError('--threads must be positive.')
    return threads


def _freeze(cfg, directory):
    os.makedirs(directory, exist_ok=True)
    cfg.write(os.path.join(directory, CONFIG_FILE))


def _scene_dir(data):
    scenes = os.path.join(data, 'scenes')
    return scenes if os.path.isdir(scenes) else data


def _read_scenes(directory):
    names = list_scenes(directory)
    if not names:
        raise ValueError('no scenes in {0}.'.format(directory))
    return [read_scene(os.path.join(directory, name)) for name in names]


def _synth(args):
    cfg = _run_config(args)
    threads = _threads(args)
    _freeze(cfg, args.out)
    write_dataset(cfg.synth, args.out, threads)


def _labelgen(args):
    cfg = _run_config(args)
    threads = _threads(args)
    scenes = _read_scenes(args.scene_dir)
    dictionary = LabelDictionary.load(cfg.labelgen.dictionary,
                                      scenes[0].vocabulary)
    maps = [read_views(os.path.join(args.maps, scene.id), dictionary)
            for scene in scenes]
    _freeze(cfg, args.out)
    for scene in generate_labels(scenes, maps, cfg.labelgen, threads):
        write_scene(scene, os.path.join(args.out, 'scenes', scene.id))


def _train(args):
    cfg = _run_config(args)
    threads = _threads(args)
    scenes = _read_scenes(_scene_dir(args.data))
    _freeze(cfg, args.out)
    write_run(train(scenes, cfg.train, threads), args.out)


def _evaluate(args):
    cfg = _run_config(args, os.path.join(args.run, CONFIG_FILE))
    threads = _threads(args)
    out = args.run if args.out is None else args.out
    model = read_checkpoint(os.path.join(args.run, MODEL_FILE))
    scenes = _read_scenes(_scene_dir(args.data))
    cm = evaluate(model, scenes, cfg.train.corrector, threads)
    quality = None
    labeled = [scene for scene in scenes if os.path.isfile(
        os.path.join(args.run, 'labels', scene.id + '.labels'))]
    if labeled:
        clean = np.concatenate([scene.clean_labels for scene in labeled])
        noisy = np.concatenate([scene.noisy_labels for scene in labeled])
        final = np.concatenate([
            np.fromfile(os.path.join(args.run, 'labels',
                                     scene.id + '.labels'),
                        dtype='<u2').astype(np.int64)
            for scene in labeled])
        if final.shape != clean.shape:
            raise ValueError('the training labels in {0} do not match the '
                             'scenes in {1}.'.format(args.run, args.data))
        k = model.num_classes
        quality = {'noisy': label_quality(clean, noisy, k),
                   'refurbished': label_quality(clean, final, k)}
    _freeze(cfg, out)
    emit_report(out, cm, read_curves(args.run),
                scenes[0].vocabulary.names, quality)


def _fit_curve(args):
    table = Table.read(args.csv, format='ascii.csv')
    for name in ('epoch', 'miou'):
        if name not in table.colnames:
            raise ConfigValidationError('{0} has no column {1!r}.'.format(
                args.csv, name))
    order = np.argsort(table['epoch'])
    curve = LearningCurve('fit', np.asarray(table['miou'])[order])
    p = curve.refit()
    if p is None:
        raise ValueError('fitting needs at least 3 epochs.')
    epochs = np.arange(1, curve.epoch + 1)
    print('a = {0:.6f}'.format(p.a))
    print('b = {0:.6f}'.format(p.b))
    print('c = {0:.6f}'.format(p.c))
    print('residual = {0:.6g}'.format(p.residual))
    print('epoch,derivative')
    for t, value in zip(epochs, eval_derivative(p, epochs)):
        print('{0},{1:.6g}'.format(t, value))
    t_c = first_trigger_epoch(p, args.r, curve.epoch)
    print('trigger epoch (r = {0}) = {1}'.format(
        args.r, 'none' if t_c is None else t_c))


def _inspect(args):
    path = args.path
    if os.path.isfile(os.path.join(path, META_FILE)):
        scene = read_scene(path)
        print('scene {0}: {1} points, classes {2}'.format(
            scene.id, scene.n_points, ', '.join(scene.vocabulary.names)))
        for name, labels in (('noisy', scene.noisy_labels),
                             ('clean', scene.clean_labels)):
            if labels is None:
                continue
            counts = np.bincount(labels[labels < scene.num_classes],
                                 minlength=scene.num_classes)
            print('{0} labels: {1}, unlabeled {2}'.format(
                name, ', '.join('{0} {1}'.format(n, c) for n, c in
                                zip(scene.vocabulary.names, counts)),
                scene.n_points - counts.sum()))
        if scene.clean_labels is not None:
            quality = label_quality(scene.clean_labels, scene.noisy_labels,
                                    scene.num_classes)
            print('noisy label accuracy {0:.4f}, mIoU {1:.4f}'.format(
                quality['accuracy'], quality['miou']))
    elif os.path.isdir(path):
        for curve in read_curves(path):
            print('{0}: {1} epochs, last mIoU {2}, {3}'.format(
                curve.sample_id, curve.epoch,
                'n/a' if curve.epoch == 0 else
                '{0:.4f}'.format(curve.miou_series[-1]),
                'corrected at epoch {0}'.format(curve.t_c)
                if curve.corrected else 'not corrected'))
    else:
        rounds = read_history(path)
        k = args.classes
        if k is None:
            k = max(2, int(rounds.max()) + 1 if rounds.size else 2)
        history = PredictionHistory(k, max(1, rounds.shape[0]))
        for predictions in rounds:
            history.record('dump', predictions)
        print('{0} rounds of {1} points'.format(*rounds.shape))
        if rounds.shape[0]:
            confidence = history.confidence('dump')
            print('confidence: mean {0:.4f}, min {1:.4f}, max {2:.4f}'.format(
                confidence.mean(), confidence.min(), confidence.max()))


_COMMANDS = {'synth': _synth, 'labelgen': _labelgen, 'train': _train,
             'evaluate': _evaluate, 'fit-curve': _fit_curve,
             'inspect': _inspect}


def main(argv=None):
    """
    Runs the ``adaco`` command.

    Parameters
    ----------
    argv : `list` of `str` or ``None``, optional
        The arguments without the program name. Default is ``sys.argv``.

    Returns
    -------
    code : `int`
        The exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write('{0}\n'.format(exc))
        return 1
    except SystemExit as exc:
        # --help
        return exc.code or 0
    try:
        _COMMANDS[args.command](args)
    except ConfigValidationError as exc:
        sys.stderr.write('adaco {0}: {1}\n'.format(args.command, exc))
        return 1
    except Exception as exc:
        log.debug('adaco {0} failed'.format(args.command), exc_info=True)
        sys.stderr.write('adaco {0}: {1}: {2}\n'.format(
            args.command, exc.__class__.__name__, exc))
        return 2
    return 0
