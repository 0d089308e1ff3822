# -*- coding: utf-8 -*-
#
# Copyright (C) 2016-2022 Matthias Klumpp <matthias@tenstral.net>
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

from strobewarden.utils.json import (
    read_json_file,
    json_pretty_dump,
    write_json_file,
    json_compact_dump,
)
from strobewarden.utils.misc import (
    clamp,
    sub_seed,
    ensure_dir,
    map_ordered,
)

__all__ = [
    'clamp',
    'sub_seed',
    'ensure_dir',
    'map_ordered',
    'json_compact_dump',
    'json_pretty_dump',
    'write_json_file',
    'read_json_file',
]
