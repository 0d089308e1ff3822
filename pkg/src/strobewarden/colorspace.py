# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

'''
sRGB to CIELAB conversion, WCAG relative luminance and the flash metric.

All conversions use the D65 white point with the 2° standard observer.
The vectorized ``*_array`` functions are the reference implementation,
the scalar functions are thin wrappers around them so both always agree
bit for bit.
'''

import math

import numpy as np

import strobewarden.typing as T
from strobewarden.errors import DomainError

# sRGB (linear) -> CIE XYZ, D65
SRGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ],
    dtype=np.float64,
)
XYZ_TO_SRGB = np.linalg.inv(SRGB_TO_XYZ)

# reference white is the XYZ of linear (1, 1, 1), which is D65 to 7 digits
D65_WHITE = SRGB_TO_XYZ.sum(axis=1)

LAB_DELTA = 6.0 / 29.0
LAB_EPSILON = LAB_DELTA**3

# WCAG 2.x relative luminance weights
LUMINANCE_WEIGHTS = np.array([0.2126, 0.7152, 0.0722], dtype=np.float64)


def _srgb_decode(c):
    c = np.asarray(c, dtype=np.float64) / 255.0
    return np.where(c <= 0.04045, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)


def _srgb_encode(v):
    v = np.asarray(v, dtype=np.float64)
    enc = np.where(v <= 0.0031308, 12.92 * v, 1.055 * np.power(np.maximum(v, 0.0), 1.0 / 2.4) - 0.055)
    return enc * 255.0


# lookup table from 8-bit channel value to linear light
SRGB_LINEAR_LUT = _srgb_decode(np.arange(256))


class LabColor(T.NamedTuple):
    '''A point in CIELAB: lightness L* (0-100) and the a*/b* opponent axes.'''

    L: float
    a: float
    b: float


# rate of color change between two samples, in Lab units per frame step
FlashMetric = float


def linearize_array(rgb) -> np.ndarray:
    '''Map 8-bit sRGB channel values to linear light in [0, 1].'''
    return SRGB_LINEAR_LUT[np.asarray(rgb, dtype=np.uint8)]


def rgb_to_lab_array(rgb) -> np.ndarray:
    '''
    Convert an array of RGB24 triplets of shape (..., 3) to CIELAB,
    returning a float64 array of the same shape.
    '''
    lin = linearize_array(rgb)
    xyz = lin @ SRGB_TO_XYZ.T
    t = xyz / D65_WHITE
    f = np.where(t > LAB_EPSILON, np.cbrt(t), t / (3.0 * LAB_DELTA**2) + 4.0 / 29.0)

    lab = np.empty(f.shape, dtype=np.float64)
    lab[..., 0] = 116.0 * f[..., 1] - 16.0
    lab[..., 1] = 500.0 * (f[..., 0] - f[..., 1])
    lab[..., 2] = 200.0 * (f[..., 1] - f[..., 2])
    return lab


def lab_to_rgb_array(lab) -> np.ndarray:
    '''
    Convert CIELAB values of shape (..., 3) back to sRGB channel values.
    The result is float64 in [0, 255]; out-of-gamut channels are clipped,
    so this direction is lossy.
    '''
    lab = np.asarray(lab, dtype=np.float64)
    fy = (lab[..., 0] + 16.0) / 116.0
    fx = fy + lab[..., 1] / 500.0
    fz = fy - lab[..., 2] / 200.0
    f = np.stack([fx, fy, fz], axis=-1)
    t = np.where(f > LAB_DELTA, f**3, 3.0 * LAB_DELTA**2 * (f - 4.0 / 29.0))

    lin = (t * D65_WHITE) @ XYZ_TO_SRGB.T
    return np.clip(_srgb_encode(lin), 0.0, 255.0)


def relative_luminance_array(rgb) -> np.ndarray:
    '''WCAG relative luminance of RGB24 triplets of shape (..., 3).'''
    return linearize_array(rgb) @ LUMINANCE_WEIGHTS


def flash_metric_array(prev_lab, cur_lab) -> np.ndarray:
    '''Element-wise flash metric between two Lab arrays of shape (..., 3).'''
    d = np.asarray(cur_lab, dtype=np.float64) - np.asarray(prev_lab, dtype=np.float64)
    return np.abs(d[..., 0]) + np.hypot(d[..., 1], d[..., 2])


def rgb_to_lab(rgb: T.RGB) -> LabColor:
    '''Convert a single RGB24 triplet to CIELAB.'''
    L, a, b = rgb_to_lab_array(np.asarray(rgb, dtype=np.uint8).reshape(1, 3))[0]
    return LabColor(float(L), float(a), float(b))


def lab_to_rgb(lab: LabColor) -> T.Tuple[float, float, float]:
    r, g, b = lab_to_rgb_array(np.asarray(lab, dtype=np.float64).reshape(1, 3))[0]
    return float(r), float(g), float(b)


def relative_luminance(rgb: T.RGB) -> float:
    return float(relative_luminance_array(np.asarray(rgb, dtype=np.uint8).reshape(1, 3))[0])


def flash_metric(prev: LabColor, cur: LabColor) -> FlashMetric:
    '''
    Amount of flashing between two colors one frame step apart:
    ``|dL| + sqrt(da² + db²)``.

    The lightness term is an absolute value, so flashes towards white
    and towards black score the same.
    '''
    return abs(cur[0] - prev[0]) + math.hypot(cur[1] - prev[1], cur[2] - prev[2])


def region_mean_lab(frame: T.Frame, mask: T.Optional[T.PixelMask] = None) -> LabColor:
    '''
    Mean CIELAB color of the pixels selected by :mask (the whole frame if
    no mask is given). Pixels are converted first and averaged afterwards.
    '''
    frame = np.asarray(frame)
    if mask is None:
        pixels = frame.reshape(-1, 3)
    else:
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != frame.shape[:2]:
            raise DomainError('Mask of shape {} does not match frame of shape {}'.format(mask.shape, frame.shape))
        pixels = frame[mask]
    if pixels.shape[0] == 0:
        raise DomainError('Can not compute the mean color of an empty region')

    L, a, b = rgb_to_lab_array(pixels).mean(axis=0)
    return LabColor(float(L), float(a), float(b))


def frame_mean_lab_series(frames: np.ndarray) -> np.ndarray:
    '''Full-frame mean Lab color for every frame of a (N, H, W, 3) array.'''
    return np.stack([rgb_to_lab_array(f).reshape(-1, 3).mean(axis=0) for f in frames])
