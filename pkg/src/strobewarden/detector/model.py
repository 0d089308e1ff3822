# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

import math
from dataclasses import dataclass

import numpy as np
from marshmallow import Schema, fields, post_load

import strobewarden.typing as T
from strobewarden.utils import read_json_file, write_json_file
from strobewarden.errors import DomainError, StrobeWardenError
from strobewarden.logging import log
from strobewarden.videoio import VideoBuffer
from strobewarden.colorspace import flash_metric_array, frame_mean_lab_series

DEFAULT_EPOCHS = 5000
DEFAULT_LEARNING_RATE = 0.1
MIN_TRAINING_SAMPLES = 10


class TrainingError(StrobeWardenError):
    pass


@dataclass(frozen=True)
class DetectorModel:
    '''
    Logistic model over the averaged flash metric.
    ``w`` is in 1/(Lab units per frame); the decision threshold on the
    metric itself is ``T = -bias / w``.
    '''

    w: float
    bias: float
    feature_mean: float = 0.0
    feature_std: float = 1.0

    @property
    def threshold(self) -> T.Optional[float]:
        '''Learned flash threshold T, or None if the weight is not positive.'''
        if self.w <= 0:
            return None
        return -self.bias / self.w


class DetectorModelSchema(Schema):
    w = fields.Float(required=True)
    bias = fields.Float(required=True)
    feature_mean = fields.Float(load_default=0.0)
    feature_std = fields.Float(load_default=1.0)

    @post_load
    def make_model(self, data, **kwargs):
        return DetectorModel(**data)


def save_model(m: DetectorModel, fname: T.PathUnion):
    write_json_file(fname, DetectorModelSchema().dump(m))


def load_model(fname: T.PathUnion) -> DetectorModel:
    return DetectorModelSchema().load(read_json_file(fname))


def video_feature(v: VideoBuffer) -> float:
    '''
    Average amount of flashing of a whole video: the mean flash metric
    between the full-frame mean Lab colors of consecutive frames.
    '''
    if v.frame_count < 2:
        raise DomainError('Need at least two frames to measure flashing, got {}'.format(v.frame_count))
    means = frame_mean_lab_series(v.frames)
    return float(flash_metric_array(means[:-1], means[1:]).mean())


def _sigmoid(x):
    # tanh form stays finite for large |x| and is exactly 0.5 at 0
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def train_logistic(
    features: T.Sequence[float],
    labels: T.Sequence[bool],
    epochs: int = DEFAULT_EPOCHS,
    lr: float = DEFAULT_LEARNING_RATE,
) -> DetectorModel:
    '''
    Fit a one-feature logistic regression with full-batch gradient descent.

    Features are standardized for the descent and the resulting weights are
    mapped back to raw feature units. Starts from zero weights, so the result
    only depends on the data.
    '''
    x = np.asarray(features, dtype=np.float64)
    y = np.asarray(labels, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise TrainingError('Got {} features but {} labels'.format(x.size, y.size))
    if x.size < MIN_TRAINING_SAMPLES:
        raise TrainingError('Need at least {} samples to train, got {}'.format(MIN_TRAINING_SAMPLES, x.size))
    if not np.all(np.isfinite(x)):
        raise TrainingError('Training features contain non-finite values')
    n_pos = int(y.sum())
    if n_pos == 0 or n_pos == y.size:
        raise TrainingError('Training data contains only one class ({} risky of {})'.format(n_pos, y.size))

    mean = float(x.mean())
    std = float(x.std())
    if std == 0.0:
        std = 1.0
    z = (x - mean) / std

    wz = 0.0
    bz = 0.0
    for _ in range(epochs):
        err = _sigmoid(wz * z + bz) - y
        wz -= lr * float(np.mean(err * z))
        bz -= lr * float(np.mean(err))

    w = wz / std
    bias = bz - wz * mean / std
    model = DetectorModel(w=w, bias=bias, feature_mean=mean, feature_std=std)
    if w <= 0:
        log.warning('Trained detector has a non-positive weight (w=%g): more flashing predicts less risk', w)
    else:
        log.info('Trained detector: w=%.6g, bias=%.6g, threshold T=%.4f', w, bias, model.threshold)
    return model


def predict(m: DetectorModel, f: float) -> T.Tuple[float, bool]:
    '''Risk probability for flash amount :f and the binary verdict (p > 0.5).'''
    x = m.w * f + m.bias
    if x >= 0:
        p = 1.0 / (1.0 + math.exp(-x))
    else:
        e = math.exp(x)
        p = e / (1.0 + e)
    return p, p > 0.5
