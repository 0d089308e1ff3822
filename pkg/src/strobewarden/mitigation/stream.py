# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

from dataclasses import dataclass

import numpy as np
from marshmallow import Schema, fields, validate, post_load

import strobewarden.typing as T
from strobewarden.errors import DomainError
from strobewarden.oracle import FlashReport
from strobewarden.logging import log
from strobewarden.videoio import VideoBuffer
from strobewarden.detector import (
    DEFAULT_GRID,
    RegionMask,
    TriggerArray,
    DetectorModel,
    mask_log_row,
    interpolate_region,
)
from strobewarden.colorspace import region_mean_lab
from strobewarden.mitigation.kmodel import DEFAULT_ASSUMED_INTENSITY, KLevelModel, predict_k
from strobewarden.mitigation.filters import (
    DEFAULT_OVERLAY_ALPHA,
    DEFAULT_SMOOTHING_N,
    SmootherState,
    apply_darkening,
    temporal_smooth,
)


@dataclass
class MitigationConfig:
    assumed_intensity: int = DEFAULT_ASSUMED_INTENSITY
    smoothing_n: int = DEFAULT_SMOOTHING_N
    overlay_alpha: float = DEFAULT_OVERLAY_ALPHA
    darkening_enabled: bool = True
    smoothing_enabled: bool = True

    def validate(self):
        if not 10 <= self.assumed_intensity <= 90:
            raise DomainError('Assumed flash intensity {} outside of [10, 90]'.format(self.assumed_intensity))
        if self.smoothing_n < 1:
            raise DomainError('Smoothing window must be at least one frame')
        if not 0.0 <= self.overlay_alpha <= 1.0:
            raise DomainError('Overlay alpha {} outside of [0, 1]'.format(self.overlay_alpha))


class MitigationConfigSchema(Schema):
    assumed_intensity = fields.Int(load_default=DEFAULT_ASSUMED_INTENSITY, validate=validate.Range(10, 90))
    smoothing_n = fields.Int(load_default=DEFAULT_SMOOTHING_N, validate=validate.Range(min=1))
    overlay_alpha = fields.Float(load_default=DEFAULT_OVERLAY_ALPHA, validate=validate.Range(0.0, 1.0))
    darkening_enabled = fields.Bool(load_default=True)
    smoothing_enabled = fields.Bool(load_default=True)

    @post_load
    def make_config(self, data, **kwargs):
        return MitigationConfig(**data)


def mitigate_stream(
    v: VideoBuffer,
    dm: DetectorModel,
    km: KLevelModel,
    cfg: T.Optional[MitigationConfig] = None,
    grid: T.Tuple[int, int] = DEFAULT_GRID,
) -> T.Tuple[VideoBuffer, T.List[T.Dict[str, T.Any]]]:
    '''
    Run the trigger array over :v frame by frame and filter the flashing
    regions it reports: temporal smoothing first, then darkening by the
    level predicted for the region's current mean color.

    Returns the filtered video and the per-frame mask log.
    '''
    if cfg is None:
        cfg = MitigationConfig()
    cfg.validate()

    array = TriggerArray.for_video(v, dm, grid)
    smoother = SmootherState(cfg.smoothing_n, cfg.overlay_alpha)
    frame_dims = (v.width, v.height)

    out_frames = np.empty_like(v.frames)
    mask_log = []
    n_masked = 0
    for i, frame in enumerate(v):
        region = interpolate_region(array.update(frame), grid, frame_dims)
        mask_log.append(mask_log_row(i, region))
        if region.is_empty:
            out_frames[i] = frame
            continue

        n_masked += 1
        out = frame
        if cfg.smoothing_enabled:
            out = temporal_smooth(smoother, out, region)
        if cfg.darkening_enabled:
            k = predict_k(km, region_mean_lab(frame, region.array), cfg)
            out = apply_darkening(out, region, k)
        out_frames[i] = out

    log.debug('Mitigated %d of %d frames', n_masked, v.frame_count)
    return v.with_frames(out_frames), mask_log


def efficacy(pre: FlashReport, post: FlashReport) -> float:
    '''Percentage of the originally flashing frames that no longer flash.'''
    if not pre.flash_frame_indices:
        raise DomainError('Efficacy is undefined for a video without flash frames')
    return 100.0 * (1.0 - len(post.flash_frame_indices) / len(pre.flash_frame_indices))


def masked_union(width: int, height: int, mask_log: T.Iterable[T.Dict[str, T.Any]]) -> np.ndarray:
    '''All pixels that were inside a mask in any frame of :mask_log.'''
    union = np.zeros((height, width), dtype=bool)
    for row in mask_log:
        union |= RegionMask(width, height, [tuple(r) for r in row['rects']]).array
    return union


def content_preserved(src: VideoBuffer, out: VideoBuffer, mask_log: T.Iterable[T.Dict[str, T.Any]]) -> bool:
    '''True if every pixel never covered by a mask is bit-identical in :src and :out.'''
    if (src.width, src.height, src.frame_count) != (out.width, out.height, out.frame_count):
        return False
    untouched = ~masked_union(src.width, src.height, mask_log)
    return bool(np.array_equal(src.frames[:, untouched], out.frames[:, untouched]))
