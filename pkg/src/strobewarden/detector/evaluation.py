# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm
from marshmallow import Schema, fields

import strobewarden.typing as T
from strobewarden.errors import StrobeWardenError
from strobewarden.manifest import DatasetManifest
from strobewarden.detector.model import DetectorModel, predict


class EvaluationError(StrobeWardenError):
    pass


@dataclass(frozen=True)
class EvalMetrics:
    tp: int
    fp: int
    tn: int
    fn: int
    accuracy: float
    auc: float
    z_score: float
    p_value: float
    threshold: T.Optional[float]
    tpr: float
    tnr: float

    @property
    def n(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


class EvalMetricsSchema(Schema):
    tp = fields.Int()
    fp = fields.Int()
    tn = fields.Int()
    fn = fields.Int()
    accuracy = fields.Float()
    auc = fields.Float()
    z_score = fields.Float()
    p_value = fields.Float()
    threshold = fields.Float(allow_none=True)
    tpr = fields.Float()
    tnr = fields.Float()


def average_ranks(values) -> np.ndarray:
    '''1-based ranks of :values, tied values share the mean of their ranks.'''
    values = np.asarray(values, dtype=np.float64)
    order = np.argsort(values, kind='mergesort')
    _, inverse, counts = np.unique(values[order], return_inverse=True, return_counts=True)
    starts = np.cumsum(counts) - counts
    mean_rank = starts + (counts + 1) / 2.0
    ranks = np.empty(values.size, dtype=np.float64)
    ranks[order] = mean_rank[inverse]
    return ranks


def rank_auc(scores, labels) -> float:
    '''Area under the ROC curve through the Mann-Whitney rank statistic.'''
    y = np.asarray(labels, dtype=bool)
    n_pos = int(y.sum())
    n_neg = y.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise EvaluationError('AUC is undefined for a test set with a single class')
    ranks = average_ranks(scores)
    return float((ranks[y].sum() - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))


def proportion_z_test(accuracy: float, n: int, p0: float = 0.5) -> T.Tuple[float, float]:
    '''One-proportion z statistic against :p0 and its one-sided p-value.'''
    z = (accuracy - p0) / math.sqrt(p0 * (1.0 - p0) / n)
    return z, float(norm.sf(z))


def evaluate(m: DetectorModel, features: T.Sequence[float], labels: T.Sequence[bool]) -> EvalMetrics:
    '''Confusion matrix at p = 0.5, rank AUC and z-test of :m on a labelled test set.'''
    if len(features) != len(labels):
        raise EvaluationError('Got {} features but {} labels'.format(len(features), len(labels)))
    if len(features) == 0:
        raise EvaluationError('Can not evaluate on an empty test set')

    probs = []
    tp = fp = tn = fn = 0
    for f, actual in zip(features, labels):
        p, risky = predict(m, f)
        probs.append(p)
        if risky and actual:
            tp += 1
        elif risky:
            fp += 1
        elif actual:
            fn += 1
        else:
            tn += 1

    auc = rank_auc(probs, labels)
    n = len(labels)
    accuracy = (tp + tn) / n
    z, p_value = proportion_z_test(accuracy, n)
    return EvalMetrics(
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
        accuracy=accuracy,
        auc=auc,
        z_score=z,
        p_value=p_value,
        threshold=m.threshold,
        tpr=tp / (tp + fn),
        tnr=tn / (tn + fp),
    )


def evaluate_manifest(m: DetectorModel, manifest: DatasetManifest) -> EvalMetrics:
    return evaluate(m, manifest.features, manifest.labels)
