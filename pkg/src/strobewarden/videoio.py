# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

'''
In-memory RGB24 frame model and the FGRV1 raw video container.

An FGRV1 file is the ASCII magic line ``FGRV1\\n``, an ASCII header line
``W H FPS N\\n`` (decimal, single spaces) and ``N`` frames of raw, row-major
RGB24 bytes without any padding.
'''

import re
from fractions import Fraction

import numpy as np
import humanize

import strobewarden.typing as T
from strobewarden.errors import StrobeWardenError
from strobewarden.logging import log

FGRV_MAGIC = b'FGRV1\n'
MAX_DIMENSION = 0xFFFF

_re_header = re.compile(rb'^([0-9]+) ([0-9]+) ([0-9]+) ([0-9]+)\n$')


class VideoFormatError(StrobeWardenError):
    pass


class VideoTruncatedError(VideoFormatError):
    pass


class VideoWriteError(StrobeWardenError):
    def __init__(self, path, reason):
        super().__init__('Unable to write video "{}": {}'.format(path, reason))
        self.path = str(path)


class VideoBuffer:
    '''
    Fixed-size sequence of RGB24 frames.

    Frames are stored as one read-only ``uint8`` array of shape
    ``(frame_count, height, width, 3)``; a buffer never changes after
    construction and may be shared freely between readers.
    '''

    def __init__(self, width: int, height: int, fps: int, frames):
        frames = np.ascontiguousarray(frames, dtype=np.uint8)
        if not 1 <= width <= MAX_DIMENSION or not 1 <= height <= MAX_DIMENSION:
            raise VideoFormatError('Invalid frame dimensions {}x{}'.format(width, height))
        if fps < 1:
            raise VideoFormatError('Frame rate must be at least 1, got {}'.format(fps))
        if frames.ndim != 4 or frames.shape[1:] != (height, width, 3):
            raise VideoFormatError(
                'Frame data of shape {} does not match {}x{} RGB24'.format(frames.shape, width, height)
            )
        if frames.shape[0] < 1:
            raise VideoFormatError('A video needs at least one frame')

        if frames.flags.writeable:
            # never freeze an array the caller may still hold
            frames = frames.copy()
            frames.flags.writeable = False
        self._width = int(width)
        self._height = int(height)
        self._fps = int(fps)
        self._frames = frames

    def with_frames(self, frames) -> 'VideoBuffer':
        '''Create a new buffer with the same frame rate but different pixel data.'''
        frames = np.asarray(frames, dtype=np.uint8)
        return VideoBuffer(frames.shape[2], frames.shape[1], self._fps, frames)

    @property
    def width(self) -> int:
        return self._width

    @property
    def height(self) -> int:
        return self._height

    @property
    def fps(self) -> int:
        return self._fps

    @property
    def frames(self) -> np.ndarray:
        return self._frames

    @property
    def frame_count(self) -> int:
        return self._frames.shape[0]

    @property
    def duration_seconds(self) -> Fraction:
        return Fraction(self.frame_count, self._fps)

    @property
    def frame_size(self) -> int:
        '''Size of a single frame in bytes.'''
        return self._width * self._height * 3

    def frame(self, index: int) -> T.Frame:
        return self._frames[index]

    def __len__(self):
        return self.frame_count

    def __iter__(self):
        return iter(self._frames)

    def __eq__(self, other):
        if not isinstance(other, VideoBuffer):
            return NotImplemented
        return (
            self._width == other._width
            and self._height == other._height
            and self._fps == other._fps
            and np.array_equal(self._frames, other._frames)
        )

    def __repr__(self):
        return '<VideoBuffer {}x{}@{} frames={}>'.format(self._width, self._height, self._fps, self.frame_count)


def write_video(v: VideoBuffer, path: T.PathUnion):
    '''Write :v as an FGRV1 file.'''

    header = '{} {} {} {}\n'.format(v.width, v.height, v.fps, v.frame_count).encode('ascii')
    try:
        with open(path, 'wb') as f:
            f.write(FGRV_MAGIC)
            f.write(header)
            f.write(v.frames.tobytes(order='C'))
    except OSError as e:
        raise VideoWriteError(path, e.strerror or str(e))

    log.debug('Wrote %s (%s)', path, humanize.naturalsize(v.frame_size * v.frame_count))


def read_video(path: T.PathUnion) -> VideoBuffer:
    '''Read an FGRV1 file, the exact inverse of :func:`write_video`.'''

    with open(path, 'rb') as f:
        magic = f.readline()
        if magic != FGRV_MAGIC:
            raise VideoFormatError('{}: not an FGRV1 file (magic: {!r})'.format(path, magic[:16]))
        header = f.readline()
        payload = f.read()

    m = _re_header.match(header)
    if not m:
        raise VideoFormatError('{}: malformed header line {!r}'.format(path, header[:64]))
    width, height, fps, count = (int(g) for g in m.groups())
    if count < 1:
        raise VideoFormatError('{}: header announces no frames'.format(path))

    expected = width * height * 3 * count
    if len(payload) < expected:
        raise VideoTruncatedError(
            '{}: payload has {} bytes, header promises {} ({} frames)'.format(path, len(payload), expected, count)
        )
    if len(payload) > expected:
        raise VideoFormatError('{}: {} unexpected trailing bytes'.format(path, len(payload) - expected))

    frames = np.frombuffer(payload, dtype=np.uint8).reshape(count, height, width, 3)
    return VideoBuffer(width, height, fps, frames)
