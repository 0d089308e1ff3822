# -*- coding: utf-8 -*-
#
# Copyright (C) 2016-2022 Matthias Klumpp <matthias@tenstral.net>
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

__version__ = '0.1.0'

from strobewarden.errors import DomainError, StrobeWardenError
from strobewarden.localconfig import LocalConfig, PipelineConfig, get_config_file

__all__ = ['LocalConfig', 'PipelineConfig', 'get_config_file', 'StrobeWardenError', 'DomainError']
