# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+


class StrobeWardenError(Exception):
    '''Base class for all errors raised by StrobeWarden.'''


class DomainError(StrobeWardenError, ValueError):
    '''
    An operation was called with input outside of its domain,
    e.g. an empty mask or frames of mismatching size.
    '''


class SpecValidationError(DomainError):
    pass


class ConfigError(StrobeWardenError):
    pass


class StageError(StrobeWardenError):
    '''A pipeline stage failed.'''

    def __init__(self, stage: str, cause: Exception):
        super().__init__('Stage "{}" failed: {}'.format(stage, cause))
        self.stage = stage
        self.cause = cause
