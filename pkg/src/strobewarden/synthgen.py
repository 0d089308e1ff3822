# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

'''
Deterministic synthetic corpora.

The trigger corpus holds videos with an optionally flashing background and
an optional, optionally flashing centered shape. The injection corpus holds
solid-color videos with periodic translucent white frames. Every random
choice comes from a :class:`SplitMix64` stream, so a seed fully determines
the bytes of a corpus.
'''

import os
from dataclasses import field, replace, dataclass

import numpy as np
import humanize

import strobewarden.typing as T
from strobewarden.utils import ensure_dir, map_ordered
from strobewarden.errors import SpecValidationError
from strobewarden.oracle import ANALYSIS_WIDTH, ANALYSIS_HEIGHT, classify_risk
from strobewarden.logging import log
from strobewarden.videoio import VideoBuffer, write_video
from strobewarden.detector import video_feature
from strobewarden.manifest import (
    DatasetManifest,
    InjectionManifest,
    TriggerManifestRow,
    InjectionManifestRow,
)
from strobewarden.utils.misc import U64_MASK

DEFAULT_DURATION = 10
DEFAULT_FPS = 30
MIN_RATE = 1
MAX_RATE = 15
INJECTION_INTENSITIES = tuple(range(10, 100, 10))
# injected white flashes per second
DEFAULT_INJECTION_RATE = 4

SHAPE_KINDS = ('circle', 'rectangle')


class SplitMix64:
    '''
    SplitMix64 pseudo-random generator (64-bit state, Weyl increment
    0x9E3779B97F4A7C15, variant-13 output mixer). Bit-identical on every
    platform and Python version.
    '''

    def __init__(self, seed: int):
        self.state = seed & U64_MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & U64_MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & U64_MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & U64_MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        '''Float in [0, 1) with 53 random bits.'''
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randint(self, lo: int, hi: int) -> int:
        '''Integer in [lo, hi], both ends inclusive.'''
        return lo + self.next_u64() % (hi - lo + 1)

    def coin(self) -> bool:
        return bool(self.next_u64() >> 63)

    def choice(self, items: T.Sequence):
        return items[self.next_u64() % len(items)]

    def color(self) -> T.RGB:
        '''Uniform draw from the 24-bit RGB cube.'''
        v = self.next_u64() >> 40
        return ((v >> 16) & 0xFF, (v >> 8) & 0xFF, v & 0xFF)


def flash_states(frame_count: int, rate: int, fps: int) -> np.ndarray:
    '''
    Two-state phase (0/1) of every frame of a signal completing :rate
    full flashes per second with a 50% duty cycle in whole frames.
    Frame i is in state floor(2 * rate * (i + 1) / fps) mod 2.
    '''
    i = np.arange(frame_count, dtype=np.int64)
    return ((2 * rate * (i + 1)) // fps) % 2


def _check_rate(rate: int, fps: int, what: str):
    if not MIN_RATE <= rate or 2 * rate > fps:
        raise SpecValidationError(
            '{} rate {} must be between {} and {} flashes/s at {} fps'.format(what, rate, MIN_RATE, fps // 2, fps)
        )


def _check_color(color, what: str):
    if len(color) != 3 or any(not 0 <= int(c) <= 255 for c in color):
        raise SpecValidationError('{} {} is not an RGB24 color'.format(what, color))


@dataclass(frozen=True)
class TriggerVideoSpec:
    seed: int
    background_flashing: bool = False
    background_rate: int = 1
    has_shape: bool = False
    shape_kind: str = 'circle'
    shape_size: float = 0.5
    shape_flashing: bool = False
    shape_rate: int = 1
    background_colors: T.Tuple[T.RGB, T.RGB] = ((0, 0, 0), (255, 255, 255))
    shape_colors: T.Tuple[T.RGB, T.RGB] = ((0, 0, 0), (255, 255, 255))
    duration: int = DEFAULT_DURATION
    fps: int = DEFAULT_FPS
    width: int = ANALYSIS_WIDTH
    height: int = ANALYSIS_HEIGHT

    @classmethod
    def from_seed(cls, seed: int, **overrides) -> 'TriggerVideoSpec':
        '''Draw every randomized field from :seed.'''
        rng = SplitMix64(seed)
        max_rate = min(MAX_RATE, overrides.get('fps', DEFAULT_FPS) // 2)
        spec = cls(
            seed=seed,
            background_flashing=rng.coin(),
            background_rate=rng.randint(MIN_RATE, max_rate),
            has_shape=rng.coin(),
            shape_kind=rng.choice(SHAPE_KINDS),
            shape_size=round(0.1 + 0.8 * rng.uniform(), 3),
            shape_flashing=rng.coin(),
            shape_rate=rng.randint(MIN_RATE, max_rate),
            background_colors=(rng.color(), rng.color()),
            shape_colors=(rng.color(), rng.color()),
        )
        return replace(spec, **overrides) if overrides else spec

    @property
    def frame_count(self) -> int:
        return self.duration * self.fps

    def validate(self):
        if self.duration < 1 or self.fps < 1:
            raise SpecValidationError('Duration and frame rate must be positive')
        if self.background_flashing:
            _check_rate(self.background_rate, self.fps, 'Background')
        if self.has_shape:
            if self.shape_kind not in SHAPE_KINDS:
                raise SpecValidationError('Unknown shape kind "{}"'.format(self.shape_kind))
            if not 0.1 <= self.shape_size <= 0.9:
                raise SpecValidationError('Shape size {} outside of [0.1, 0.9]'.format(self.shape_size))
            if self.shape_flashing:
                _check_rate(self.shape_rate, self.fps, 'Shape')
        for c in self.background_colors + self.shape_colors:
            _check_color(c, 'Color')


@dataclass(frozen=True)
class InjectionVideoSpec:
    seed: int
    base_color: T.RGB
    intensity: int
    flash_rate: int = DEFAULT_INJECTION_RATE
    duration: int = DEFAULT_DURATION
    fps: int = DEFAULT_FPS
    width: int = ANALYSIS_WIDTH
    height: int = ANALYSIS_HEIGHT

    @property
    def frame_count(self) -> int:
        return self.duration * self.fps

    def validate(self):
        if self.intensity not in INJECTION_INTENSITIES:
            raise SpecValidationError(
                'Flash intensity {} is not a multiple of 10 in [10, 90]'.format(self.intensity)
            )
        if self.duration < 1 or self.fps < 1:
            raise SpecValidationError('Duration and frame rate must be positive')
        _check_rate(self.flash_rate, self.fps, 'Injection')
        _check_color(self.base_color, 'Base color')


def shape_mask(kind: str, size: float, width: int, height: int) -> np.ndarray:
    '''Boolean mask of a centered shape; :size is relative to the smaller frame dimension.'''
    extent = size * min(width, height)
    yy, xx = np.ogrid[:height, :width]
    if kind == 'circle':
        cx = (width - 1) / 2.0
        cy = (height - 1) / 2.0
        r = extent / 2.0
        return (xx - cx) ** 2 + (yy - cy) ** 2 <= r * r

    side = max(1, int(round(extent)))
    x0 = (width - side) // 2
    y0 = (height - side) // 2
    return (xx >= x0) & (xx < x0 + side) & (yy >= y0) & (yy < y0 + side)


def gen_trigger_video(spec: TriggerVideoSpec) -> VideoBuffer:
    '''Render the video described by :spec.'''
    spec.validate()
    n = spec.frame_count

    bg_colors = np.array(spec.background_colors, dtype=np.uint8)
    if spec.background_flashing:
        bg_states = flash_states(n, spec.background_rate, spec.fps)
    else:
        bg_states = np.zeros(n, dtype=np.int64)

    frames = np.empty((n, spec.height, spec.width, 3), dtype=np.uint8)
    frames[:] = bg_colors[bg_states][:, None, None, :]

    if spec.has_shape:
        mask = shape_mask(spec.shape_kind, spec.shape_size, spec.width, spec.height)
        sh_colors = np.array(spec.shape_colors, dtype=np.uint8)
        if spec.shape_flashing:
            sh_states = flash_states(n, spec.shape_rate, spec.fps)
        else:
            sh_states = np.zeros(n, dtype=np.int64)
        frames[:, mask] = sh_colors[sh_states][:, None, :]

    return VideoBuffer(spec.width, spec.height, spec.fps, frames)


def composite_white(color: T.RGB, intensity: int) -> T.RGB:
    '''Alpha-blend white over :color at :intensity percent, rounding half up.'''
    return tuple(c + ((255 - c) * intensity + 50) // 100 for c in (int(v) for v in color))  # type: ignore


def injection_frames(frame_count: int, rate: int, fps: int) -> np.ndarray:
    '''
    Indices of the frames that receive a white flash: :rate per second,
    spread evenly and offset by half a period so no flash sits on frame 0.
    '''
    i = np.arange(frame_count, dtype=np.int64)
    offset = fps // (2 * rate)
    return np.nonzero(((i + offset) * rate) % fps < rate)[0]


def gen_injection_video(spec: InjectionVideoSpec) -> VideoBuffer:
    '''Solid :spec.base_color frames with translucent white flash frames.'''
    spec.validate()
    frames = np.empty((spec.frame_count, spec.height, spec.width, 3), dtype=np.uint8)
    frames[:] = np.array(spec.base_color, dtype=np.uint8)
    flashed = np.array(composite_white(spec.base_color, spec.intensity), dtype=np.uint8)
    frames[injection_frames(spec.frame_count, spec.flash_rate, spec.fps)] = flashed
    return VideoBuffer(spec.width, spec.height, spec.fps, frames)


@dataclass(frozen=True)
class _TriggerJob:
    index: int
    spec: TriggerVideoSpec
    out_dir: str
    rel_path: str = field(default='')


def _build_trigger_entry(job: _TriggerJob) -> TriggerManifestRow:
    spec = job.spec
    v = gen_trigger_video(spec)
    write_video(v, os.path.join(job.out_dir, job.rel_path))
    risky, report = classify_risk(v)
    f_avg = video_feature(v)
    log.debug(
        'Generated %s: risky=%s, %d flashes/s max, F_avg=%.3f',
        job.rel_path,
        risky,
        report.max_flashes_per_second,
        f_avg,
    )
    return TriggerManifestRow(
        path=job.rel_path,
        background_flashing=spec.background_flashing,
        background_rate=spec.background_rate if spec.background_flashing else 0,
        has_shape=spec.has_shape,
        shape_kind=spec.shape_kind if spec.has_shape else 'none',
        shape_size=spec.shape_size if spec.has_shape else 0.0,
        shape_flashing=spec.has_shape and spec.shape_flashing,
        shape_rate=spec.shape_rate if spec.has_shape and spec.shape_flashing else 0,
        oracle_risky=risky,
        f_avg=f_avg,
    )


def trigger_specs(n: int, seed: int, **overrides) -> T.List[TriggerVideoSpec]:
    '''The :n video specs of a trigger corpus, one per-video seed drawn from :seed each.'''
    rng = SplitMix64(seed)
    return [TriggerVideoSpec.from_seed(rng.next_u64(), **overrides) for _ in range(n)]


def gen_dataset(
    n: int, seed: int, out_dir: T.PathUnion, jobs: int = 1, manifest_name: str = 'manifest.csv', **overrides
) -> DatasetManifest:
    '''
    Generate a trigger corpus of :n videos into :out_dir, label every video
    with the oracle, measure its average flashing and write the manifest.
    Keyword :overrides replace spec fields (e.g. a shorter duration).
    '''
    if n < 1:
        raise SpecValidationError('Need to generate at least one video')
    out_dir = ensure_dir(out_dir)
    ensure_dir(os.path.join(out_dir, 'videos'))

    specs = trigger_specs(n, seed, **overrides)
    job_list = [
        _TriggerJob(i, spec, out_dir, os.path.join('videos', 'trigger-{:04d}.fgrv'.format(i)))
        for i, spec in enumerate(specs)
    ]
    log.info('Generating %d trigger videos (seed %d) in %s', n, seed, out_dir)
    rows = map_ordered(_build_trigger_entry, job_list, jobs)

    manifest = DatasetManifest(rows)
    manifest.write(os.path.join(out_dir, manifest_name))
    n_risky = sum(1 for r in rows if r.oracle_risky)
    frame_bytes = specs[0].width * specs[0].height * 3 * specs[0].frame_count
    log.info(
        'Trigger corpus ready: %d videos (%d risky, %d safe), %s of video data',
        n,
        n_risky,
        n - n_risky,
        humanize.naturalsize(frame_bytes * n),
    )
    return manifest


def injection_spec_for_row(row: InjectionManifestRow, **overrides) -> InjectionVideoSpec:
    return InjectionVideoSpec(
        seed=row.seed, base_color=row.base_color, intensity=row.intensity, flash_rate=row.flash_rate, **overrides
    )


def gen_injection_dataset(
    n_colors: int,
    seed: int,
    out_dir: T.PathUnion,
    intensities: T.Sequence[int] = INJECTION_INTENSITIES,
    rate: int = DEFAULT_INJECTION_RATE,
    write_videos: bool = False,
    manifest_name: str = 'injection-manifest.csv',
    **overrides,
) -> InjectionManifest:
    '''
    Draw :n_colors random base colors and describe one injection video per
    color and intensity. Videos are only written when :write_videos is set,
    since every row can be regenerated exactly from its fields. Keyword
    :overrides apply to the written videos only.
    '''
    if n_colors < 1:
        raise SpecValidationError('Need at least one base color')
    out_dir = ensure_dir(out_dir)
    rng = SplitMix64(seed)

    rows = []
    for ci in range(n_colors):
        color_seed = rng.next_u64()
        base = SplitMix64(color_seed).color()
        for intensity in intensities:
            row = InjectionManifestRow(
                path=os.path.join('videos', 'inject-{:04d}-{:02d}.fgrv'.format(ci, intensity)),
                seed=color_seed,
                base_color=base,
                intensity=intensity,
                flash_rate=rate,
            )
            spec = injection_spec_for_row(row, **overrides)
            spec.validate()
            if write_videos:
                ensure_dir(os.path.join(out_dir, 'videos'))
                write_video(gen_injection_video(spec), os.path.join(out_dir, row.path))
            rows.append(row)

    manifest = InjectionManifest(rows)
    manifest.write(os.path.join(out_dir, manifest_name))
    log.info('Injection corpus: %d base colors x %d intensities = %d rows', n_colors, len(intensities), len(rows))
    return manifest
