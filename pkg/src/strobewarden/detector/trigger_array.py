# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

'''
Sparse spatial detection: a uniform grid of sampled pixels, each running
its own instance of the detector on a one-second rolling mean of the
flash metric, and the interpolation of active nodes into pixel regions.
'''

import math
from dataclasses import dataclass

import numpy as np
from skimage.measure import label, regionprops

import strobewarden.typing as T
from strobewarden.errors import DomainError
from strobewarden.videoio import VideoBuffer
from strobewarden.colorspace import rgb_to_lab_array, flash_metric_array
from strobewarden.detector.model import DetectorModel

DEFAULT_GRID = (50, 50)

Rect = T.Tuple[int, int, int, int]


def _check_grid(frame_dims: T.Tuple[int, int], grid: T.Tuple[int, int]):
    width, height = frame_dims
    grid_w, grid_h = grid
    if grid_w < 1 or grid_h < 1:
        raise DomainError('Invalid trigger grid {}x{}'.format(grid_w, grid_h))
    if grid_w > width or grid_h > height:
        raise DomainError('Trigger grid {}x{} is larger than the {}x{} frame'.format(grid_w, grid_h, width, height))


def node_positions(size: int, count: int) -> np.ndarray:
    '''Pixel coordinate floor((i + 0.5) * size / count) of every node along one axis.'''
    return ((2 * np.arange(count, dtype=np.int64) + 1) * size) // (2 * count)


def sampling_reduction(frame_dims: T.Tuple[int, int], grid: T.Tuple[int, int]) -> float:
    '''Fraction of pixels the trigger array does not have to look at.'''
    _check_grid(frame_dims, grid)
    total = frame_dims[0] * frame_dims[1]
    return (total - grid[0] * grid[1]) / total


class TriggerArray:
    '''
    Grid of independent flash detectors over a frame stream.

    Every node keeps a ring buffer of the last :window flash metric values of
    its sampled pixel. A node activates once the mean of its buffer exceeds
    the threshold and deactivates only after the mean stayed at or below the
    threshold for :hold consecutive frames.
    '''

    def __init__(
        self,
        width: int,
        height: int,
        threshold: float,
        grid: T.Tuple[int, int] = DEFAULT_GRID,
        window: int = 30,
        hold: T.Optional[int] = None,
    ):
        _check_grid((width, height), grid)
        if window < 1:
            raise DomainError('Rolling window must hold at least one frame')

        self.width = width
        self.height = height
        self.grid_w, self.grid_h = grid
        self.threshold = threshold
        self.window = window
        self.hold = window // 2 if hold is None else hold

        self.xs = node_positions(width, self.grid_w)
        self.ys = node_positions(height, self.grid_h)

        self._buffer = np.zeros((window, self.grid_h, self.grid_w), dtype=np.float64)
        self._pos = 0
        self._count = 0
        self._prev_lab: T.Optional[np.ndarray] = None
        self._active = np.zeros((self.grid_h, self.grid_w), dtype=bool)
        self._calm = np.zeros((self.grid_h, self.grid_w), dtype=np.int64)

    @classmethod
    def for_video(cls, v: VideoBuffer, m: DetectorModel, grid: T.Tuple[int, int] = DEFAULT_GRID) -> 'TriggerArray':
        _check_grid((v.width, v.height), grid)
        if m.threshold is None:
            raise DomainError('Detector model has no usable threshold (w={})'.format(m.w))
        return cls(v.width, v.height, m.threshold, grid=grid, window=v.fps)

    @property
    def node_count(self) -> int:
        return self.grid_w * self.grid_h

    @property
    def rolling_mean(self) -> np.ndarray:
        if self._count == 0:
            return np.zeros_like(self._buffer[0])
        # unfilled slots are still zero, so the plain sum is the sum of the contents
        return self._buffer.sum(axis=0) / self._count

    @property
    def active(self) -> np.ndarray:
        return self._active.copy()

    def sample(self, frame: T.Frame) -> np.ndarray:
        '''RGB values of the sampled pixels, shape (grid_h, grid_w, 3).'''
        return np.asarray(frame)[self.ys[:, None], self.xs[None, :]]

    def update(self, frame: T.Frame) -> np.ndarray:
        '''Feed the next frame and return the resulting activation grid.'''
        lab = rgb_to_lab_array(self.sample(frame))
        if self._prev_lab is None:
            self._prev_lab = lab
            return self._active.copy()

        self._buffer[self._pos] = flash_metric_array(self._prev_lab, lab)
        self._pos = (self._pos + 1) % self.window
        self._count = min(self._count + 1, self.window)
        self._prev_lab = lab

        above = self.rolling_mean > self.threshold
        self._calm = np.where(above, 0, self._calm + 1)
        self._active = above | (self._active & (self._calm < self.hold))
        return self._active.copy()


class RegionMask:
    '''
    Union of axis-aligned pixel rectangles ``(x0, y0, x1, y1)``, end
    coordinates exclusive, inside a frame of the given size.
    '''

    def __init__(self, width: int, height: int, rects: T.Optional[T.List[Rect]] = None):
        self.width = width
        self.height = height
        self.rects: T.List[Rect] = list(rects) if rects else []
        self._array: T.Optional[np.ndarray] = None

    @classmethod
    def full(cls, width: int, height: int) -> 'RegionMask':
        return cls(width, height, [(0, 0, width, height)])

    @property
    def is_empty(self) -> bool:
        return not self.rects

    @property
    def array(self) -> np.ndarray:
        '''The mask as a boolean (height, width) array.'''
        if self._array is None:
            mask = np.zeros((self.height, self.width), dtype=bool)
            for x0, y0, x1, y1 in self.rects:
                mask[y0:y1, x0:x1] = True
            mask.flags.writeable = False
            self._array = mask
        return self._array

    @property
    def pixel_count(self) -> int:
        return int(np.count_nonzero(self.array))

    def to_list(self) -> T.List[T.List[int]]:
        return [list(r) for r in self.rects]

    def __eq__(self, other):
        if not isinstance(other, RegionMask):
            return NotImplemented
        return (self.width, self.height, self.rects) == (other.width, other.height, other.rects)

    def __repr__(self):
        return '<RegionMask {}x{} rects={}>'.format(self.width, self.height, self.rects)


def interpolate_region(
    active: np.ndarray, grid: T.Tuple[int, int], frame_dims: T.Tuple[int, int]
) -> RegionMask:
    '''
    Turn an activation grid into a pixel mask.

    Active nodes are grouped into 4-connected components; each component
    becomes the bounding box of its node pixels, grown by half the node
    pitch on every side and clipped to the frame.
    '''
    grid_w, grid_h = grid
    width, height = frame_dims
    active = np.asarray(active, dtype=bool)
    if active.shape != (grid_h, grid_w):
        raise DomainError('Activation grid of shape {} does not match {}x{} nodes'.format(active.shape, grid_w, grid_h))

    region = RegionMask(width, height)
    if not active.any():
        return region

    xs = node_positions(width, grid_w)
    ys = node_positions(height, grid_h)
    half_px = width / grid_w / 2.0
    half_py = height / grid_h / 2.0

    labels = label(active, connectivity=1, background=0)
    for props in regionprops(labels):
        min_row, min_col, max_row, max_col = props.bbox
        x0 = max(0, math.floor(xs[min_col] - half_px))
        x1 = min(width, math.ceil(xs[max_col - 1] + half_px))
        y0 = max(0, math.floor(ys[min_row] - half_py))
        y1 = min(height, math.ceil(ys[max_row - 1] + half_py))
        region.rects.append((int(x0), int(y0), int(x1), int(y1)))

    return region


@dataclass
class ActivationMap:
    '''Per-frame node activations of a trigger array, shape (frames, grid_h, grid_w).'''

    grid: T.Tuple[int, int]
    frame_dims: T.Tuple[int, int]
    frames: np.ndarray

    def __len__(self):
        return self.frames.shape[0]

    def region(self, index: int) -> RegionMask:
        return interpolate_region(self.frames[index], self.grid, self.frame_dims)

    def regions(self) -> T.Iterator[RegionMask]:
        for i in range(len(self)):
            yield self.region(i)

    @property
    def active_counts(self) -> np.ndarray:
        return self.frames.reshape(len(self), -1).sum(axis=1)


def run_trigger_array(v: VideoBuffer, m: DetectorModel, grid: T.Tuple[int, int] = DEFAULT_GRID) -> ActivationMap:
    '''Run the trigger array over every frame of :v.'''
    array = TriggerArray.for_video(v, m, grid)
    frames = np.stack([array.update(frame) for frame in v])
    return ActivationMap(grid=tuple(grid), frame_dims=(v.width, v.height), frames=frames)


def mask_log_row(frame_index: int, region: RegionMask) -> T.Dict[str, T.Any]:
    '''One JSON-lines row of a per-frame mask log.'''
    return {'frame': frame_index, 'rects': region.to_list()}
