# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

from strobewarden.detector.model import (
    DetectorModel,
    TrainingError,
    predict,
    load_model,
    save_model,
    video_feature,
    train_logistic,
)
from strobewarden.detector.evaluation import (
    EvalMetrics,
    EvaluationError,
    EvalMetricsSchema,
    evaluate,
    rank_auc,
    evaluate_manifest,
)
from strobewarden.detector.trigger_array import (
    DEFAULT_GRID,
    RegionMask,
    TriggerArray,
    ActivationMap,
    mask_log_row,
    run_trigger_array,
    interpolate_region,
    sampling_reduction,
)

__all__ = [
    'DEFAULT_GRID',
    'DetectorModel',
    'TrainingError',
    'predict',
    'load_model',
    'save_model',
    'video_feature',
    'train_logistic',
    'EvalMetrics',
    'EvaluationError',
    'EvalMetricsSchema',
    'evaluate',
    'rank_auc',
    'evaluate_manifest',
    'RegionMask',
    'TriggerArray',
    'ActivationMap',
    'mask_log_row',
    'run_trigger_array',
    'interpolate_region',
    'sampling_reduction',
]
