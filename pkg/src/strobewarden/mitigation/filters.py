# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

'''
Per-frame mitigation filters: a black overlay of opacity k ("k-level
darkening") and a translucent overlay of the running average region color.
'''

from collections import deque

import numpy as np

import strobewarden.typing as T
from strobewarden.errors import DomainError
from strobewarden.colorspace import LabColor, lab_to_rgb, region_mean_lab

DEFAULT_SMOOTHING_N = 15
DEFAULT_OVERLAY_ALPHA = 0.6


def _as_mask(frame: np.ndarray, mask) -> T.Optional[np.ndarray]:
    if mask is None:
        return None
    # RegionMask instances carry a materialized array
    mask = np.asarray(getattr(mask, 'array', mask), dtype=bool)
    if mask.shape != frame.shape[:2]:
        raise DomainError('Mask of shape {} does not match frame of shape {}'.format(mask.shape, frame.shape))
    return mask


def darken_pixels(pixels: np.ndarray, k: T.Union[int, float]) -> np.ndarray:
    '''
    Darken an array of RGB values of any shape (..., 3) by :k percent,
    rounding half up. Integer levels are computed exactly in integers.
    '''
    if not 0 <= k <= 100:
        raise DomainError('Darkening level k={} outside of [0, 100]'.format(k))
    if isinstance(k, (int, np.integer)):
        c = pixels.astype(np.int32)
        return ((c * (100 - int(k)) + 50) // 100).astype(np.uint8)
    return np.floor(pixels.astype(np.float64) * (100.0 - k) / 100.0 + 0.5).astype(np.uint8)


def apply_darkening(frame: T.Frame, mask, k: T.Union[int, float]) -> np.ndarray:
    '''
    Return a copy of :frame with a black filter of opacity :k percent over
    the pixels selected by :mask. A :mask of None darkens the whole frame.
    '''
    frame = np.asarray(frame, dtype=np.uint8)
    pmask = _as_mask(frame, mask)
    if pmask is None:
        return darken_pixels(frame, k)

    out = frame.copy()
    out[pmask] = darken_pixels(frame[pmask], k)
    return out


class SmootherState:
    '''
    Running average of the mean Lab color of the masked region over the
    last :n frames, blended over the region with opacity :alpha.
    '''

    def __init__(self, n: int = DEFAULT_SMOOTHING_N, alpha: float = DEFAULT_OVERLAY_ALPHA):
        if n < 1:
            raise DomainError('Smoothing needs a window of at least one frame, got {}'.format(n))
        if not 0.0 <= alpha <= 1.0:
            raise DomainError('Overlay alpha {} outside of [0, 1]'.format(alpha))
        self.n = n
        self.alpha = alpha
        self.buffer: T.Deque[LabColor] = deque(maxlen=n)

    def push(self, color: LabColor):
        self.buffer.append(color)

    def mean(self) -> LabColor:
        if not self.buffer:
            raise DomainError('No colors recorded yet')
        L, a, b = np.mean(np.array(self.buffer, dtype=np.float64), axis=0)
        return LabColor(float(L), float(a), float(b))

    def overlay_rgb(self) -> np.ndarray:
        '''The running average color in sRGB, float and gamut-clipped.'''
        return np.array(lab_to_rgb(self.mean()), dtype=np.float64)

    def __len__(self):
        return len(self.buffer)


def temporal_smooth(state: SmootherState, frame: T.Frame, mask) -> np.ndarray:
    '''
    Record the mean color of the masked region of :frame and blend the
    running average color over that region. An empty mask leaves both the
    frame and the running average untouched.
    '''
    frame = np.asarray(frame, dtype=np.uint8)
    pmask = _as_mask(frame, mask)
    if pmask is None:
        pmask = np.ones(frame.shape[:2], dtype=bool)
    if not pmask.any():
        return frame.copy()

    state.push(region_mean_lab(frame, pmask))
    overlay = state.overlay_rgb()

    out = frame.copy()
    blended = (1.0 - state.alpha) * frame[pmask].astype(np.float64) + state.alpha * overlay
    out[pmask] = np.clip(np.floor(blended + 0.5), 0, 255).astype(np.uint8)
    return out
