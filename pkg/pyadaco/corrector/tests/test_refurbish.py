# Licensed under a 3-clause BSD style license - see LICENSE.rst

import numpy as np
from numpy.testing import assert_array_equal

from .. import (CorrectorConfig, CorrectionReport, cluster_frequency,
                winner_label, winner_candidates, refurbish_sample,
                apply_full_supervision, scene_geometry)
from ...geometry import ClusterSet
from ...history import ReliableSet, PredictionHistory
from ...scene import SampleScene, UNLABELED
from ...synth import SynthConfig, NoiseSpec, generate_scene, inject_noise

from pytest import raises

CLASSES = ['ground', 'car', 'pole', 'vegetation']


def scene_of(labels, n=None):
    labels = np.asarray(labels)
    points = np.arange(3 * labels.size, dtype=float).reshape(-1, 3)
    return SampleScene('s', points, labels, CLASSES)


def test_cluster_frequency():
    reliable = ReliableSet(np.arange(17), [1] * 10 + [0] * 4 + [2] * 3)
    counts = cluster_frequency(np.arange(20), reliable, 4)
    assert_array_equal(counts, [4, 10, 3, 0])
    assert_array_equal(cluster_frequency([30, 31], reliable, 4), 0)
    assert_array_equal(cluster_frequency([], reliable, 4), 0)


def test_winner_candidates():
    assert_array_equal(winner_candidates([10, 4, 3], 3), [0, 1])
    assert_array_equal(winner_candidates([0, 7, 0], 3), [1])
    assert_array_equal(winner_candidates([5, 2, 5], 1), [0, 2])
    assert winner_candidates([0, 0, 0], 3).size == 0
    with raises(ValueError):
        winner_candidates([1, 2], 0.5)


def test_winner_label(rng):
    draws = set(winner_label([10, 4, 3], 3, rng) for _ in range(200))
    assert draws == {0, 1}
    assert winner_label([0, 0, 9, 0], 3, rng) == 2
    assert winner_label([0, 0, 0], 3, rng) is None


def test_winner_candidates_brute_force(rng):
    for _ in range(1000):
        counts = rng.integers(0, 12, rng.integers(2, 8))
        omega = rng.uniform(1, 5)
        top = counts.max()
        expected = [k for k, c in enumerate(counts)
                    if c > 0 and c >= top / omega]
        assert list(winner_candidates(counts, omega)) == expected


def test_no_reliable_points():
    scene = scene_of([1, 1, 2, UNLABELED])
    clusters = ClusterSet([0, 0, -1, 0])
    new, report = refurbish_sample(scene, clusters, ReliableSet([], []))
    assert_array_equal(new.noisy_labels, scene.noisy_labels)
    assert report.n_points_relabeled == 0
    assert report.n_clusters_touched == 0


def test_unanimous_cluster_flipped():
    labels = np.array([1] * 8 + [3, 3])
    scene = scene_of(labels)
    clusters = ClusterSet([0] * 8 + [-1, -1])
    reliable = ReliableSet(np.arange(8), [2] * 8)
    new, report = refurbish_sample(scene, clusters, reliable, t_c=7)
    assert_array_equal(new.noisy_labels, [2] * 8 + [3, 3])
    assert report.flips[1, 2] == 8
    assert report.n_points_relabeled == 8
    assert report.t_c == 7
    assert report.to_dict()['n_points_relabeled'] == 8


def test_whole_cluster_and_outside_points():
    labels = np.array([1, 1, UNLABELED, 1, 0, 0, 3])
    scene = scene_of(labels)
    clusters = ClusterSet([0, 0, 0, 0, -2, -1, 1])
    # one reliable point decides cluster 0; reliable ground and noise points
    # take their own label; cluster 1 has no reliable point
    reliable = ReliableSet([1, 4, 5], [2, 3, 1])
    new, report = refurbish_sample(scene, clusters, reliable)
    assert_array_equal(new.noisy_labels, [2, 2, 2, 2, 3, 1, 3])
    assert report.flips[4, 2] == 1
    assert report.n_clusters_touched == 1
    frozen, _ = refurbish_sample(scene, clusters, reliable,
                                 CorrectorConfig(freeze_ground=True))
    assert_array_equal(frozen.noisy_labels, [2, 2, 2, 2, 0, 1, 3])


def test_deterministic_with_seed(rng):
    n = 300
    labels = rng.integers(0, 4, n)
    scene = scene_of(labels)
    clusters = ClusterSet(rng.integers(0, 10, n))
    chosen = np.sort(rng.choice(n, 120, replace=False))
    reliable = ReliableSet(chosen, rng.integers(0, 4, chosen.size))
    cfg = CorrectorConfig(rng_seed=4)
    first, _ = refurbish_sample(scene, clusters, reliable, cfg)
    second, _ = refurbish_sample(scene, clusters, reliable, cfg)
    assert_array_equal(first.noisy_labels, second.noisy_labels)
    # labels change only in voted clusters or at reliable points
    touched = np.isin(clusters.assignment,
                      clusters.assignment[reliable.indices])
    touched[reliable.indices] = True
    assert_array_equal(first.noisy_labels[~touched], labels[~touched])


def test_length_checks():
    scene = scene_of([1, 1, 2])
    with raises(ValueError):
        refurbish_sample(scene, ClusterSet([0, 0]), ReliableSet([], []))
    with raises(ValueError):
        refurbish_sample(scene, ClusterSet([0, 0, 0]),
                         ReliableSet([5], [1]))
    with raises(TypeError):
        refurbish_sample(scene, [0, 0, 0], ReliableSet([], []))


def test_full_supervision():
    scene = scene_of([1, UNLABELED, 2])
    labels = apply_full_supervision(scene)
    assert_array_equal(labels, [1, UNLABELED, 2])
    assert labels.size == scene.n_points


def test_report_round_trip():
    report = CorrectionReport('x', 3, 10, 2, np.eye(3, dtype=int) * 4)
    assert report.n_points_relabeled == 0
    again = CorrectionReport.from_dict(report.to_dict())
    assert again.to_dict() == report.to_dict()


def test_refurbished_labels_beat_noisy_labels():
    cfg = SynthConfig(n_scenes=1, rng_seed=3)
    clean = generate_scene(cfg, 0)
    noisy = inject_noise(clean, NoiseSpec(symmetric_rate=0.3), 5)
    # a model predicting the clean labels in every round
    history = PredictionHistory(clean.num_classes)
    for _ in range(5):
        history.record(noisy.id, clean.clean_labels)
    reliable = history.reliable_set(noisy.id, 0.9)
    geometry = scene_geometry(noisy)
    new, report = refurbish_sample(noisy, geometry.clusters, reliable)
    truth = clean.clean_labels
    before = np.mean(noisy.noisy_labels == truth)
    after = np.mean(new.noisy_labels == truth)
    assert after > before
    assert report.n_points_relabeled > 0
