# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

'''
Reference flash-risk analyzer.

Implements the "three flashes" general flash and red flash rule: frame pairs
are compared on a fixed 341x256 analysis raster, transitions covering at least
a quarter of the raster become events, opposing event pairs of the same kind
become flashes, and a video is risky when any one-second window holds more
than three flash completions.
'''

import hashlib
from enum import Enum
from dataclasses import field, dataclass

import numpy as np
from marshmallow import Schema, fields

import strobewarden.typing as T
from strobewarden.utils import json_compact_dump
from strobewarden.errors import DomainError
from strobewarden.videoio import VideoBuffer
from strobewarden.colorspace import SRGB_LINEAR_LUT, LUMINANCE_WEIGHTS

ANALYSIS_WIDTH = 341
ANALYSIS_HEIGHT = 256

# minimum fraction of the raster that has to take part in a transition
AREA_THRESHOLD = 0.25
# minimum change in relative luminance of a pixel
LUMINANCE_DELTA = 0.10
# the darker of the two states has to stay below this level
DARK_LEVEL = 0.80
# saturated red: R / (R + G + B) >= 0.8 with R >= 128
RED_RATIO = 0.8
RED_MIN_VALUE = 128
# a video is risky above this many flashes in any one-second window
MAX_SAFE_FLASHES = 3

# relative luminance of every possible RGB24 color channel contribution
_LUM_R = SRGB_LINEAR_LUT * LUMINANCE_WEIGHTS[0]
_LUM_G = SRGB_LINEAR_LUT * LUMINANCE_WEIGHTS[1]
_LUM_B = SRGB_LINEAR_LUT * LUMINANCE_WEIGHTS[2]


class Direction(str, Enum):
    UP = 'up'
    DOWN = 'down'

    def opposes(self, other: 'Direction') -> bool:
        return self is not other


class TransitionKind(str, Enum):
    LUMINANCE = 'luminance'
    RED = 'red'


@dataclass(frozen=True)
class TransitionEvent:
    frame_index: int
    direction: Direction
    area_fraction: float
    kind: TransitionKind


@dataclass
class FlashReport:
    events: T.List[TransitionEvent] = field(default_factory=list)
    flashes: T.List[T.Tuple[int, int]] = field(default_factory=list)
    max_flashes_per_second: int = 0
    flash_frame_indices: T.Set[int] = field(default_factory=set)
    risky: bool = False

    @property
    def flash_count(self) -> int:
        return len(self.flashes)


class TransitionEventSchema(Schema):
    frame_index = fields.Int()
    direction = fields.Function(lambda e: e.direction.value)
    area_fraction = fields.Float()
    kind = fields.Function(lambda e: e.kind.value)


class FlashReportSchema(Schema):
    '''
    JSON shape of a :class:`FlashReport`, as emitted by ``sw-tool analyze``.
    '''

    events = fields.List(fields.Nested(TransitionEventSchema()))
    flashes = fields.Function(lambda r: [[s, e] for s, e in r.flashes])
    max_flashes_per_second = fields.Int()
    flash_frame_indices = fields.Function(lambda r: sorted(r.flash_frame_indices))
    risky = fields.Bool()


def report_to_json(report: FlashReport) -> str:
    return json_compact_dump(FlashReportSchema().dump(report))


def report_digest(report: FlashReport) -> str:
    '''SHA-256 over the serialized report; equal reports share a digest.'''
    return hashlib.sha256(report_to_json(report).encode('utf-8')).hexdigest()


def _raster_indices(src: int, dst: int) -> np.ndarray:
    return (np.arange(dst, dtype=np.int64) * src) // dst


def analysis_raster(v: VideoBuffer) -> VideoBuffer:
    '''
    Nearest-neighbor resample of every frame of :v to the 341x256 analysis raster.
    Returns :v itself if it already has the raster size.
    '''
    if v.width == ANALYSIS_WIDTH and v.height == ANALYSIS_HEIGHT:
        return v
    ys = _raster_indices(v.height, ANALYSIS_HEIGHT)
    xs = _raster_indices(v.width, ANALYSIS_WIDTH)
    return v.with_frames(v.frames[:, ys[:, None], xs[None, :], :])


def _relative_luminance(frame: np.ndarray) -> np.ndarray:
    return _LUM_R[frame[..., 0]] + _LUM_G[frame[..., 1]] + _LUM_B[frame[..., 2]]


def _saturated_red(frame: np.ndarray) -> np.ndarray:
    rgb = frame.astype(np.int32)
    total = rgb.sum(axis=-1)
    r = rgb[..., 0]
    # R / (R+G+B) >= 0.8, in integers to avoid rounding at the boundary
    return (r >= RED_MIN_VALUE) & (5 * r >= 4 * total)


def _vote(up: int, down: int, total: int, frame_index: int, kind: TransitionKind) -> T.Optional[TransitionEvent]:
    limit = AREA_THRESHOLD * total
    up_ok = up >= limit
    down_ok = down >= limit
    if not up_ok and not down_ok:
        return None
    if up_ok and (not down_ok or up >= down):
        return TransitionEvent(frame_index, Direction.UP, up / total, kind)
    return TransitionEvent(frame_index, Direction.DOWN, down / total, kind)


class _FrameFeatures:
    '''Per-frame quantities reused by consecutive pair comparisons.'''

    __slots__ = ('lum', 'red')

    def __init__(self, frame: np.ndarray):
        self.lum = _relative_luminance(frame)
        self.red = _saturated_red(frame)


def _transitions_between(prev: _FrameFeatures, cur: _FrameFeatures, frame_index: int) -> T.List[TransitionEvent]:
    total = prev.lum.size
    events = []

    darker_ok = np.minimum(prev.lum, cur.lum) < DARK_LEVEL
    delta = cur.lum - prev.lum
    up = int(np.count_nonzero((delta >= LUMINANCE_DELTA) & darker_ok))
    down = int(np.count_nonzero((delta <= -LUMINANCE_DELTA) & darker_ok))
    ev = _vote(up, down, total, frame_index, TransitionKind.LUMINANCE)
    if ev:
        events.append(ev)

    red_up = int(np.count_nonzero(cur.red & ~prev.red))
    red_down = int(np.count_nonzero(prev.red & ~cur.red))
    ev = _vote(red_up, red_down, total, frame_index, TransitionKind.RED)
    if ev:
        events.append(ev)

    return events


def detect_transitions(prev: T.Frame, cur: T.Frame, frame_index: int = 1) -> T.List[TransitionEvent]:
    '''
    Compare two frames of the analysis raster and return the transition
    events between them: at most one luminance and one red event.
    :frame_index is the index of :cur in its video.
    '''
    prev = np.asarray(prev, dtype=np.uint8)
    cur = np.asarray(cur, dtype=np.uint8)
    if prev.shape != cur.shape:
        raise DomainError('Can not compare frames of shape {} and {}'.format(prev.shape, cur.shape))
    return _transitions_between(_FrameFeatures(prev), _FrameFeatures(cur), frame_index)


def _pair_flashes(events: T.List[TransitionEvent]) -> T.List[T.Tuple[int, int]]:
    '''
    Pair opposing events of a single kind into flashes. A completed flash
    consumes both of its events; a repeated direction replaces the pending one.
    '''
    flashes = []
    pending = None
    for ev in events:
        if pending is not None and ev.direction.opposes(pending.direction):
            flashes.append((pending.frame_index, ev.frame_index))
            pending = None
        else:
            pending = ev
    return flashes


def _max_per_window(completions: T.List[int], window: int) -> int:
    '''Largest number of completion frames inside any run of :window consecutive frames.'''
    best = 0
    start = 0
    for end in range(len(completions)):
        while completions[end] - completions[start] >= window:
            start += 1
        best = max(best, end - start + 1)
    return best


def count_flashes(v: VideoBuffer) -> FlashReport:
    '''Scan all consecutive frame pairs of :v and count flashes per second.'''

    if v.frame_count < 2:
        raise DomainError('Flash analysis needs at least two frames, got {}'.format(v.frame_count))

    raster = analysis_raster(v)
    events: T.List[TransitionEvent] = []
    prev = _FrameFeatures(raster.frame(0))
    for i in range(1, raster.frame_count):
        cur = _FrameFeatures(raster.frame(i))
        events.extend(_transitions_between(prev, cur, i))
        prev = cur

    report = FlashReport(events=events)
    for kind in TransitionKind:
        kind_flashes = _pair_flashes([e for e in events if e.kind is kind])
        report.flashes.extend(kind_flashes)
        report.max_flashes_per_second = max(
            report.max_flashes_per_second, _max_per_window([end for _, end in kind_flashes], v.fps)
        )
    report.flashes.sort()
    for start, end in report.flashes:
        report.flash_frame_indices.update(range(start, end + 1))
    report.risky = report.max_flashes_per_second > MAX_SAFE_FLASHES

    return report


def classify_risk(v: VideoBuffer) -> T.Tuple[bool, FlashReport]:
    '''Binary flash-risk verdict for :v together with the full report.'''
    report = count_flashes(v)
    return report.risky, report
