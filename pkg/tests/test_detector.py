# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

import json
import logging

import numpy as np
import pytest

from strobewarden.errors import DomainError
from strobewarden.detector import (
    DetectorModel,
    RegionMask,
    TriggerArray,
    TrainingError,
    EvaluationError,
    predict,
    evaluate,
    rank_auc,
    load_model,
    save_model,
    mask_log_row,
    video_feature,
    train_logistic,
    run_trigger_array,
    interpolate_region,
    sampling_reduction,
)
from strobewarden.detector.evaluation import average_ranks, proportion_z_test
from strobewarden.detector.trigger_array import node_positions


def test_video_feature(strobe_video, static_video):
    assert video_feature(static_video) == 0.0
    assert video_feature(strobe_video) == pytest.approx(100.0, abs=0.01)

    with pytest.raises(DomainError):
        video_feature(static_video.with_frames(static_video.frames[:1]))


def test_train_logistic(trained_detector):
    m = trained_detector
    assert m.w > 0
    assert 17.0 < m.threshold < 25.0

    assert not predict(m, 0.0)[1]
    assert predict(m, 40.0)[1]
    p, _ = predict(m, m.threshold)
    assert p == pytest.approx(0.5)

    # deterministic from zero init
    again = train_logistic([float(f) for f in range(0, 41, 2)], [f > 20 for f in range(0, 41, 2)], 3000, 0.5)
    assert again == m


def test_train_errors():
    with pytest.raises(TrainingError):
        train_logistic([1.0, 2.0], [True, False])
    with pytest.raises(TrainingError):
        train_logistic([float(i) for i in range(20)], [False] * 20)
    with pytest.raises(TrainingError):
        train_logistic([float(i) for i in range(20)], [True] * 10)


def test_negative_weight_has_no_threshold(caplog):
    features = [float(i) for i in range(20)]
    with caplog.at_level(logging.WARNING, logger='strobewarden'):
        m = train_logistic(features, [i < 10 for i in range(20)], epochs=500)
    assert m.w < 0
    assert m.threshold is None
    assert 'non-positive weight' in caplog.text


def test_verdict_invariant_under_positive_scaling(trained_detector):
    m = trained_detector
    features = [0.5 * i for i in range(81)]
    for c in (0.01, 0.5, 3.0, 1000.0):
        scaled = DetectorModel(w=m.w * c, bias=m.bias * c, feature_mean=m.feature_mean, feature_std=m.feature_std)
        assert scaled.threshold == pytest.approx(m.threshold)
        for f in features:
            if abs(f - m.threshold) < 1e-6:
                continue
            assert predict(scaled, f)[1] == predict(m, f)[1]


def test_model_json(tmp_path, trained_detector):
    fname = tmp_path / 'model.json'
    save_model(trained_detector, fname)
    data = json.loads(fname.read_text())
    assert set(data.keys()) == {'w', 'bias', 'feature_mean', 'feature_std'}
    assert load_model(fname) == trained_detector


def test_rank_auc():
    assert rank_auc([0.1, 0.2, 0.8, 0.9], [False, False, True, True]) == 1.0
    assert rank_auc([0.9, 0.8, 0.2, 0.1], [False, False, True, True]) == 0.0
    assert rank_auc([0.5, 0.5, 0.5, 0.5], [False, True, False, True]) == 0.5
    assert list(average_ranks([3.0, 1.0, 3.0, 2.0])) == [3.5, 1.0, 3.5, 2.0]

    with pytest.raises(EvaluationError):
        rank_auc([0.1, 0.2], [True, True])


def _pairwise_auc(scores, labels):
    pos = [s for s, y in zip(scores, labels) if y]
    neg = [s for s, y in zip(scores, labels) if not y]
    wins = 0.0
    for p in pos:
        for n in neg:
            if p > n:
                wins += 1.0
            elif p == n:
                wins += 0.5
    return wins / (len(pos) * len(neg))


def test_rank_auc_matches_pairwise_count():
    rng = np.random.default_rng(3)
    for _ in range(50):
        n = int(rng.integers(2, 101))
        # coarse rounding produces plenty of ties
        scores = [float(s) for s in np.round(rng.random(n), 1)]
        labels = [bool(y) for y in rng.random(n) < 0.5]
        labels[0], labels[1] = True, False
        assert rank_auc(scores, labels) == pytest.approx(_pairwise_auc(scores, labels))


def test_proportion_z_test():
    z, p = proportion_z_test(0.8, 200)
    assert z == pytest.approx(8.485, abs=0.01)
    assert p < 1e-15

    z, p = proportion_z_test(0.5, 100)
    assert z == 0.0
    assert p == pytest.approx(0.5)


def test_evaluate():
    m = DetectorModel(w=1.0, bias=-10.0)
    assert m.threshold == 10.0
    features = [2.0, 4.0, 12.0, 14.0, 8.0, 11.0]
    labels = [False, False, True, True, True, False]
    metrics = evaluate(m, features, labels)
    assert (metrics.tp, metrics.fp, metrics.tn, metrics.fn) == (2, 1, 2, 1)
    assert metrics.n == 6
    assert metrics.accuracy == pytest.approx(4 / 6)
    assert metrics.tpr == pytest.approx(2 / 3)
    assert metrics.tnr == pytest.approx(2 / 3)
    assert metrics.threshold == 10.0
    assert metrics.auc == pytest.approx(8 / 9)


def test_evaluate_array_input():
    m = DetectorModel(w=1.0, bias=-10.0)
    features = np.array([2.0, 4.0, 12.0, 14.0, 8.0, 11.0])
    labels = np.array([False, False, True, True, True, False])
    assert evaluate(m, features, labels) == evaluate(m, list(features), list(labels))

    with pytest.raises(EvaluationError):
        evaluate(m, np.array([]), np.array([], dtype=bool))


def test_sampling_reduction():
    assert sampling_reduction((1024, 768), (50, 50)) == pytest.approx(0.99682, abs=1e-5)
    assert sampling_reduction((341, 256), (50, 50)) == pytest.approx(1 - 2500 / (341 * 256))

    with pytest.raises(DomainError):
        sampling_reduction((40, 30), (50, 50))
    with pytest.raises(DomainError):
        sampling_reduction((40, 30), (0, 5))


def test_node_positions():
    assert list(node_positions(10, 5)) == [1, 3, 5, 7, 9]
    assert list(node_positions(100, 1)) == [50]
    xs = node_positions(1024, 50)
    assert xs[0] >= 0 and xs[-1] < 1024
    assert np.all(np.diff(xs) > 0)


def test_trigger_array_activation(strobe_video, static_video, trained_detector):
    array = TriggerArray.for_video(strobe_video, trained_detector, grid=(4, 3))
    assert not array.update(strobe_video.frame(0)).any()
    assert array.update(strobe_video.frame(1)).all()

    calm = run_trigger_array(static_video, trained_detector, grid=(4, 3))
    assert calm.active_counts.sum() == 0
    assert all(r.is_empty for r in calm.regions())


def test_trigger_array_hysteresis(make_video, trained_detector):
    # one second of strobe, then a still image
    colors = [(0, 0, 0) if i % 2 == 0 else (255, 255, 255) for i in range(30)] + [(0, 0, 0)] * 90
    v = make_video(colors)
    activations = run_trigger_array(v, trained_detector, grid=(2, 2))
    active = activations.active_counts

    assert active[1] == 4
    assert active[29] == 4
    # the rolling mean only falls below the threshold once most of the strobe left the window
    last_active = int(np.nonzero(active)[0][-1])
    assert 30 < last_active < 120
    assert active[-1] == 0


def test_trigger_array_localized(trained_detector):
    from strobewarden.videoio import VideoBuffer

    frames = np.zeros((30, 40, 80, 3), dtype=np.uint8)
    # the top-left quarter strobes
    frames[1::2, :20, :40] = 255
    v = VideoBuffer(80, 40, 30, frames)

    activations = run_trigger_array(v, trained_detector, grid=(8, 4))
    region = activations.region(10)
    assert region.rects == [(0, 0, 40, 20)]

    mask = region.array
    assert mask[:20, :40].all()
    assert not mask[20:].any()
    assert not mask[:, 40:].any()


def test_trigger_array_band_coverage(trained_detector):
    from strobewarden.videoio import VideoBuffer

    gw, gh = 10, 8
    rng = np.random.default_rng(11)
    for p in rng.uniform(0.1, 0.9, size=6):
        for vertical in (True, False):
            frames = np.zeros((30, 40, 80, 3), dtype=np.uint8)
            if vertical:
                frames[1::2, :, : int(p * 80)] = 255
            else:
                frames[1::2, : int(p * 40)] = 255
            v = VideoBuffer(80, 40, 30, frames)

            active = run_trigger_array(v, trained_detector, grid=(gw, gh)).active_counts[20]
            expected = int(p * gw * gh)
            assert expected - (gw + gh) <= active <= expected + (gw + gh)


def test_interpolate_region():
    active = np.zeros((3, 4), dtype=bool)
    active[0, 0] = True
    active[2, 2:4] = True
    region = interpolate_region(active, (4, 3), (40, 30))
    assert region.rects == [(0, 0, 10, 10), (20, 20, 40, 30)]
    assert region.pixel_count == 100 + 200

    # diagonal nodes are not connected
    diag = np.eye(3, dtype=bool)
    assert len(interpolate_region(diag, (3, 3), (30, 30)).rects) == 3

    assert interpolate_region(np.zeros((3, 4), dtype=bool), (4, 3), (40, 30)).is_empty
    with pytest.raises(DomainError):
        interpolate_region(active, (3, 4), (40, 30))


def test_region_mask():
    full = RegionMask.full(10, 5)
    assert full.pixel_count == 50
    assert full == RegionMask(10, 5, [(0, 0, 10, 5)])
    assert mask_log_row(3, full) == {'frame': 3, 'rects': [[0, 0, 10, 5]]}
    assert mask_log_row(4, RegionMask(10, 5)) == {'frame': 4, 'rects': []}

    with pytest.raises(ValueError):
        full.array[0, 0] = False
