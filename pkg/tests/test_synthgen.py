# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

import os

import numpy as np
import pytest

from strobewarden.errors import SpecValidationError
from strobewarden.synthgen import (
    SplitMix64,
    TriggerVideoSpec,
    InjectionVideoSpec,
    gen_dataset,
    flash_states,
    injection_frames,
    composite_white,
    gen_trigger_video,
    gen_injection_video,
    trigger_specs,
    gen_injection_dataset,
)


def test_splitmix64():
    # reference outputs of SplitMix64 seeded with 0
    rng = SplitMix64(0)
    assert rng.next_u64() == 0xE220A8397B1DCDAF
    assert rng.next_u64() == 0x6E789E6AA1B965F4
    assert rng.next_u64() == 0x06C45D188009454F

    a = SplitMix64(99)
    b = SplitMix64(99)
    assert [a.randint(1, 15) for _ in range(50)] == [b.randint(1, 15) for _ in range(50)]
    assert all(0.0 <= a.uniform() < 1.0 for _ in range(100))
    assert all(0 <= c <= 255 for _ in range(20) for c in a.color())


def test_flash_states():
    states = flash_states(30, 15, 30)
    assert list(states[:4]) == [1, 0, 1, 0]
    for rate in range(1, 16):
        transitions = int(np.count_nonzero(np.diff(flash_states(60, rate, 30))))
        assert transitions == (2 * 2 * rate if 2 * rate < 30 else 2 * 2 * rate - 1)


def test_trigger_spec_from_seed():
    a = TriggerVideoSpec.from_seed(1234)
    b = TriggerVideoSpec.from_seed(1234)
    assert a == b
    a.validate()
    assert 1 <= a.background_rate <= 15
    assert 0.1 <= a.shape_size <= 0.9

    short = TriggerVideoSpec.from_seed(1234, duration=2)
    assert short.duration == 2
    assert short.background_colors == a.background_colors


def test_trigger_spec_validation():
    with pytest.raises(SpecValidationError):
        TriggerVideoSpec(seed=0, background_flashing=True, background_rate=16).validate()
    with pytest.raises(SpecValidationError):
        TriggerVideoSpec(seed=0, has_shape=True, shape_kind='triangle').validate()
    with pytest.raises(SpecValidationError):
        TriggerVideoSpec(seed=0, has_shape=True, shape_size=0.95).validate()
    # settings of a missing shape are not checked
    TriggerVideoSpec(seed=0, has_shape=False, shape_kind='triangle').validate()


def test_gen_trigger_video_shape():
    spec = TriggerVideoSpec(
        seed=0,
        has_shape=True,
        shape_kind='rectangle',
        shape_size=0.5,
        shape_flashing=True,
        shape_rate=15,
        background_colors=((10, 20, 30), (10, 20, 30)),
        shape_colors=((255, 0, 0), (0, 0, 255)),
        duration=1,
        width=40,
        height=20,
    )
    v = gen_trigger_video(spec)
    assert (v.width, v.height, v.fps, v.frame_count) == (40, 20, 30, 30)

    # a 10x10 square in the middle, alternating blue and red from the first frame
    assert tuple(v.frame(0)[10, 20]) == (0, 0, 255)
    assert tuple(v.frame(1)[10, 20]) == (255, 0, 0)
    assert tuple(v.frame(0)[0, 0]) == (10, 20, 30)
    inside = np.all(v.frame(0) == (0, 0, 255), axis=-1)
    assert int(inside.sum()) == 100
    assert inside[5:15, 15:25].all()


@pytest.mark.parametrize('rate', [1, 2, 4, 8, 15])
def test_generated_flash_rate(rate):
    from strobewarden.oracle import count_flashes

    spec = TriggerVideoSpec(seed=0, background_flashing=True, background_rate=rate, duration=2, width=20, height=10)
    report = count_flashes(gen_trigger_video(spec))
    # at 15/s frame 0 already starts in the second phase, leaving an odd number of transitions
    expected = 2 * rate if 2 * rate < 30 else 2 * rate - 1
    assert report.flash_count == expected


def test_corpus_seed_stream(tmp_path):
    # every per-video and per-color seed is one draw from the corpus generator, in order
    stream = [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]
    assert [s.seed for s in trigger_specs(3, 0)] == stream

    spec = TriggerVideoSpec.from_seed(0)
    assert spec.seed == 0
    assert spec.background_flashing is True
    assert spec.background_rate == 1
    assert spec.has_shape is False
    assert TriggerVideoSpec.from_seed(0) == spec

    manifest = gen_injection_dataset(3, 0, str(tmp_path), intensities=(50, 70))
    assert [r.seed for r in manifest] == [stream[0]] * 2 + [stream[1]] * 2 + [stream[2]] * 2
    assert [r.intensity for r in manifest] == [50, 70] * 3


def test_injection_video():
    assert composite_white((0, 0, 0), 90) == (230, 230, 230)
    assert composite_white((255, 255, 255), 50) == (255, 255, 255)
    assert composite_white((100, 0, 200), 10) == (116, 26, 206)

    frames = injection_frames(60, 4, 30)
    assert len(frames) == 8
    assert 0 not in frames
    assert np.all(np.diff(frames) > 1)

    spec = InjectionVideoSpec(seed=1, base_color=(0, 0, 0), intensity=90, duration=2, width=8, height=6)
    v = gen_injection_video(spec)
    flashed = [i for i in range(v.frame_count) if v.frame(i)[0, 0, 0] != 0]
    assert flashed == list(frames)
    assert tuple(v.frame(flashed[0])[3, 3]) == (230, 230, 230)

    with pytest.raises(SpecValidationError):
        InjectionVideoSpec(seed=1, base_color=(0, 0, 0), intensity=95).validate()
    with pytest.raises(SpecValidationError):
        InjectionVideoSpec(seed=1, base_color=(0, 0, 0), intensity=50, flash_rate=16).validate()


def test_injection_default_rate_is_risky():
    from strobewarden.oracle import classify_risk

    spec = InjectionVideoSpec(seed=1, base_color=(0, 0, 0), intensity=90, duration=2, width=8, height=6)
    risky, report = classify_risk(gen_injection_video(spec))
    assert risky
    assert report.max_flashes_per_second == 4

    white = InjectionVideoSpec(seed=1, base_color=(255, 255, 255), intensity=90, duration=2, width=8, height=6)
    risky, report = classify_risk(gen_injection_video(white))
    assert not risky
    assert report.events == []


def test_gen_dataset(tmp_path):
    from strobewarden.manifest import TRIGGER_MANIFEST_FIELDS, DatasetManifest
    from strobewarden.videoio import read_video

    manifest = gen_dataset(6, 77, tmp_path / 'a', duration=1, width=40, height=30)
    assert len(manifest) == 6

    with open(tmp_path / 'a' / 'manifest.csv', 'r') as f:
        assert f.readline().strip() == ','.join(TRIGGER_MANIFEST_FIELDS)

    reread = DatasetManifest.read(tmp_path / 'a' / 'manifest.csv')
    assert reread.rows == manifest.rows
    for row in reread:
        assert row.path == os.path.join('videos', os.path.basename(row.path))
        v = read_video(reread.resolve(row))
        assert (v.width, v.height, v.frame_count) == (40, 30, 30)
        if not row.has_shape:
            assert row.shape_kind == 'none'
        if not row.background_flashing and not row.shape_flashing:
            assert not row.oracle_risky
            assert row.f_avg == 0.0

    # same seed, same bytes; worker count does not matter
    again = gen_dataset(6, 77, tmp_path / 'b', jobs=2, duration=1, width=40, height=30)
    assert again.rows == manifest.rows
    assert (tmp_path / 'a' / 'manifest.csv').read_bytes() == (tmp_path / 'b' / 'manifest.csv').read_bytes()
    for row in manifest:
        assert (tmp_path / 'a' / row.path).read_bytes() == (tmp_path / 'b' / row.path).read_bytes()


def test_gen_injection_dataset(tmp_path):
    from strobewarden.manifest import InjectionManifest

    manifest = gen_injection_dataset(4, 5, tmp_path, intensities=(30, 90))
    assert len(manifest) == 8
    assert not (tmp_path / 'videos').exists()
    assert [r.intensity for r in manifest] == [30, 90] * 4
    assert len({r.base_color for r in manifest}) == 4

    reread = InjectionManifest.read(tmp_path / 'injection-manifest.csv')
    assert reread.rows == manifest.rows

    manifest = gen_injection_dataset(1, 5, tmp_path / 'w', intensities=(50,), write_videos=True, duration=1)
    assert os.path.isfile(manifest.resolve(manifest.rows[0]))
