# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

from strobewarden.mitigation.kmodel import (
    FitError,
    KSample,
    KLevelModel,
    KLevelModelSchema,
    k_curves,
    predict_k,
    find_min_k,
    fit_k_model,
    load_k_model,
    read_samples,
    run_k_sweep,
    save_k_model,
    write_samples,
    correlation_matrix,
)
from strobewarden.mitigation.stream import (
    MitigationConfig,
    MitigationConfigSchema,
    efficacy,
    mitigate_stream,
    content_preserved,
)
from strobewarden.mitigation.filters import SmootherState, apply_darkening, temporal_smooth

__all__ = [
    'FitError',
    'KSample',
    'KLevelModel',
    'KLevelModelSchema',
    'k_curves',
    'predict_k',
    'find_min_k',
    'fit_k_model',
    'load_k_model',
    'read_samples',
    'run_k_sweep',
    'save_k_model',
    'write_samples',
    'correlation_matrix',
    'MitigationConfig',
    'MitigationConfigSchema',
    'efficacy',
    'mitigate_stream',
    'content_preserved',
    'SmootherState',
    'apply_darkening',
    'temporal_smooth',
]
