# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

import logging

__all__ = ['log', 'set_verbose', 'get_verbose']

LOG_FORMAT = '%(asctime)s - %(levelname)s: %(message)s'
LOG_DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

__verbose_logging = False

log = logging.getLogger('strobewarden')

if not __verbose_logging:
    logging.basicConfig(level=logging.INFO, format=LOG_FORMAT, datefmt=LOG_DATE_FORMAT)


def set_verbose(enabled: bool):
    global __verbose_logging

    __verbose_logging = enabled

    logging.basicConfig(level=logging.INFO, format=LOG_FORMAT, datefmt=LOG_DATE_FORMAT)
    if enabled:
        log.setLevel(logging.DEBUG)
        logging.getLogger().setLevel(logging.DEBUG)
    else:
        log.setLevel(logging.INFO)


def get_verbose() -> bool:
    return __verbose_logging
