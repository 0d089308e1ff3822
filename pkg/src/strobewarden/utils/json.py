# -*- coding: utf-8 -*-
#
# Copyright (C) 2016-2022 Matthias Klumpp <matthias@tenstral.net>
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

import json

import strobewarden.typing as T


def json_compact_dump(obj, as_bytes=False):
    '''
    Convert :obj to JSON string reproducibly and
    in the most compact form possible.
    '''
    s = json.dumps(obj, ensure_ascii=False, separators=(',', ':'), sort_keys=True)
    if as_bytes:
        return bytes(s, 'utf-8')
    return s


def json_pretty_dump(obj) -> str:
    '''Reproducible, human-readable JSON for report files.'''
    return json.dumps(obj, ensure_ascii=False, indent=2, sort_keys=True) + '\n'


def write_json_file(fname: T.PathUnion, obj):
    with open(fname, 'w', encoding='utf-8') as f:
        f.write(json_pretty_dump(obj))


def read_json_file(fname: T.PathUnion):
    with open(fname, 'r', encoding='utf-8') as f:
        return json.load(f)
