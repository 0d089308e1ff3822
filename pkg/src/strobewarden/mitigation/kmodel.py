# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

'''
Offline k-level sweep over the injection corpus and the linear model
predicting the minimum darkening level from base color and flash intensity.
'''

import os
import csv
import math
from dataclasses import dataclass

import numpy as np
from marshmallow import Schema, fields, post_load

import strobewarden.typing as T
from strobewarden.utils import clamp, map_ordered, read_json_file, write_json_file
from strobewarden.errors import StrobeWardenError
from strobewarden.oracle import count_flashes, analysis_raster
from strobewarden.logging import log
from strobewarden.synthgen import gen_injection_video, injection_spec_for_row
from strobewarden.videoio import VideoBuffer, read_video
from strobewarden.manifest import ManifestError, InjectionManifest, InjectionManifestRow
from strobewarden.colorspace import LabColor, rgb_to_lab
from strobewarden.mitigation.filters import darken_pixels

if T.TYPE_CHECKING:
    from strobewarden.mitigation.stream import MitigationConfig

SAMPLE_FIELDS = ['L', 'a', 'b', 'intensity', 'min_k']
DESIGN_COLUMNS = ['intercept', 'L', 'a', 'b', 'intensity']
MIN_FIT_SAMPLES = 10
# flash intensity assumed at runtime, in percent
DEFAULT_ASSUMED_INTENSITY = 70


class FitError(StrobeWardenError):
    pass


@dataclass(frozen=True)
class KSample:
    L: float
    a: float
    b: float
    intensity: int
    min_k: int

    @property
    def lab(self) -> LabColor:
        return LabColor(self.L, self.a, self.b)


def _is_safe_at(raster: VideoBuffer, k: int) -> bool:
    return not count_flashes(raster.with_frames(darken_pixels(raster.frames, k))).risky


def find_min_k(v: VideoBuffer) -> int:
    '''
    Smallest integer darkening level that makes the oracle judge :v safe
    when applied to every full frame.
    '''
    # darkening is per-pixel, so it commutes with the nearest-neighbor raster
    raster = analysis_raster(v)
    if _is_safe_at(raster, 0):
        return 0

    # invariant: lo is risky, hi is safe; k=100 turns everything black
    lo, hi = 0, 100
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _is_safe_at(raster, mid):
            hi = mid
        else:
            lo = mid
    return hi


def _sweep_row(job: T.Tuple[InjectionManifestRow, str, T.Dict[str, T.Any]]) -> KSample:
    row, fname, overrides = job
    if os.path.isfile(fname):
        v = read_video(fname)
    else:
        v = gen_injection_video(injection_spec_for_row(row, **overrides))
    lab = rgb_to_lab(row.base_color)
    min_k = find_min_k(v)
    log.debug('Base color %s at %d%%: k=%d', row.base_color, row.intensity, min_k)
    return KSample(L=lab.L, a=lab.a, b=lab.b, intensity=row.intensity, min_k=min_k)


def run_k_sweep(manifest: InjectionManifest, jobs: int = 1, **overrides) -> T.List[KSample]:
    '''
    Determine the minimum darkening level of every injection video of
    :manifest. Videos are read from disk if present and regenerated from
    their row otherwise, with keyword :overrides (e.g. a shorter duration)
    applied to the regenerated ones.
    '''
    if len(manifest) == 0:
        raise ManifestError('Injection manifest is empty')
    job_list = [(row, manifest.resolve(row), dict(overrides)) for row in manifest]
    log.info('Sweeping darkening levels over %d injection videos', len(job_list))
    return map_ordered(_sweep_row, job_list, jobs)


def write_samples(samples: T.Iterable[KSample], fname: T.PathUnion):
    with open(fname, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(SAMPLE_FIELDS)
        for s in samples:
            writer.writerow([repr(float(s.L)), repr(float(s.a)), repr(float(s.b)), int(s.intensity), int(s.min_k)])


def read_samples(fname: T.PathUnion) -> T.List[KSample]:
    with open(fname, 'r', encoding='utf-8', newline='') as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != SAMPLE_FIELDS:
            raise ManifestError('{}: unexpected sample header {}'.format(fname, reader.fieldnames))
        return [
            KSample(
                L=float(d['L']),
                a=float(d['a']),
                b=float(d['b']),
                intensity=int(d['intensity']),
                min_k=int(d['min_k']),
            )
            for d in reader
        ]


@dataclass(frozen=True)
class KLevelModel:
    '''k = b0 + bL*L + ba*a + bb*b + bI*intensity, clamped to [0, 100].'''

    b0: float
    bL: float
    ba: float
    bb: float
    bI: float
    pearson_kL: float = 0.0

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([self.b0, self.bL, self.ba, self.bb, self.bI], dtype=np.float64)


class KLevelModelSchema(Schema):
    b0 = fields.Float(required=True)
    bL = fields.Float(required=True)
    ba = fields.Float(required=True)
    bb = fields.Float(required=True)
    bI = fields.Float(required=True)
    pearson_kL = fields.Float(load_default=0.0)

    @post_load
    def make_model(self, data, **kwargs):
        return KLevelModel(**data)


def save_k_model(m: KLevelModel, fname: T.PathUnion):
    write_json_file(fname, KLevelModelSchema().dump(m))


def load_k_model(fname: T.PathUnion) -> KLevelModel:
    return KLevelModelSchema().load(read_json_file(fname))


def _samples_matrix(samples: T.Sequence[KSample]) -> np.ndarray:
    return np.array([[s.L, s.a, s.b, s.intensity, s.min_k] for s in samples], dtype=np.float64)


def pearson(x, y) -> float:
    '''Pearson correlation of two equally long series; 0.0 if either is constant.'''
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    dx = x - x.mean()
    dy = y - y.mean()
    denom = math.sqrt(float(np.dot(dx, dx)) * float(np.dot(dy, dy)))
    if denom == 0.0:
        return 0.0
    return float(np.dot(dx, dy) / denom)


def _collinear_columns(X: np.ndarray) -> T.List[str]:
    '''Names of the design columns that add nothing to the rank of the columns before them.'''
    names = []
    rank = 0
    for i in range(X.shape[1]):
        r = np.linalg.matrix_rank(X[:, : i + 1])
        if r == rank:
            names.append(DESIGN_COLUMNS[i])
        rank = r
    return names


def fit_k_model(samples: T.Sequence[KSample]) -> KLevelModel:
    '''
    Ordinary least squares of min_k on (1, L*, a*, b*, intensity), solved
    through the normal equations.
    '''
    if len(samples) < MIN_FIT_SAMPLES:
        raise FitError('Need at least {} samples to fit, got {}'.format(MIN_FIT_SAMPLES, len(samples)))

    data = _samples_matrix(samples)
    X = np.column_stack([np.ones(len(samples)), data[:, :4]])
    y = data[:, 4]

    if len(np.unique(data[:, 0])) < 2:
        raise FitError('Samples span a single L* value, the L column is collinear with: intercept')
    if np.linalg.matrix_rank(X) < X.shape[1]:
        raise FitError('Rank-deficient design, collinear columns: {}'.format(', '.join(_collinear_columns(X))))

    beta = np.linalg.solve(X.T @ X, X.T @ y)
    r = pearson(y, data[:, 0])
    if np.ptp(y) == 0:
        log.warning('Minimum k is %d for every sample, correlation with L* is undefined', int(y[0]))

    m = KLevelModel(
        b0=float(beta[0]),
        bL=float(beta[1]),
        ba=float(beta[2]),
        bb=float(beta[3]),
        bI=float(beta[4]),
        pearson_kL=r,
    )
    coeffs = ', '.join('{}={:.4f}'.format(n, b) for n, b in zip(DESIGN_COLUMNS, beta))
    log.info('Fitted k model: %s, r(k, L*)=%.3f', coeffs, r)
    return m


def predict_k(m: KLevelModel, base: LabColor, cfg: T.Optional['MitigationConfig'] = None) -> float:
    '''
    Darkening level for a region of mean color :base, assuming flashes of
    the configured intensity.
    '''
    intensity = cfg.assumed_intensity if cfg is not None else DEFAULT_ASSUMED_INTENSITY
    x = np.array([1.0, base[0], base[1], base[2], float(intensity)], dtype=np.float64)
    return clamp(float(np.dot(m.coefficients, x)), 0.0, 100.0)


def correlation_matrix(samples: T.Sequence[KSample]) -> T.Dict[str, T.Dict[str, float]]:
    '''Pairwise Pearson correlations between all sample columns.'''
    data = _samples_matrix(samples)
    return {
        a: {b: (1.0 if i == j else pearson(data[:, i], data[:, j])) for j, b in enumerate(SAMPLE_FIELDS)}
        for i, a in enumerate(SAMPLE_FIELDS)
    }


def k_curves(samples: T.Sequence[KSample]) -> T.Dict[T.Tuple[float, float, float], T.List[T.Tuple[int, int]]]:
    '''The (intensity, min_k) curve of every base color, ordered by intensity.'''
    curves: T.Dict[T.Tuple[float, float, float], T.List[T.Tuple[int, int]]] = {}
    for s in samples:
        curves.setdefault((s.L, s.a, s.b), []).append((s.intensity, s.min_k))
    for points in curves.values():
        points.sort()
    return curves
