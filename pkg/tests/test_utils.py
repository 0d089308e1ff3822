# -*- coding: utf-8 -*-
#
# Copyright (C) 2020-2022 Matthias Klumpp <matthias@tenstral.net>
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

import json

from strobewarden.utils import (
    clamp,
    sub_seed,
    map_ordered,
    read_json_file,
    write_json_file,
    json_compact_dump,
)


def _square(x):
    return x * x


def test_json_compact_dump():
    data = {'b': [1, 2], 'a': 'ä', 'c': {'z': None, 'y': 0.5}}
    assert json_compact_dump(data) == '{"a":"ä","b":[1,2],"c":{"y":0.5,"z":null}}'
    assert json_compact_dump(data, as_bytes=True) == json_compact_dump(data).encode('utf-8')
    assert json.loads(json_compact_dump(data)) == data


def test_json_file(tmp_path):
    fname = tmp_path / 'data.json'
    write_json_file(fname, {'k': 2, 'a': [1.5]})
    assert fname.read_text().endswith('\n')
    assert read_json_file(fname) == {'k': 2, 'a': [1.5]}


def test_sub_seed():
    assert sub_seed(42, 'trigger') == sub_seed(42, 'trigger')
    assert sub_seed(42, 'trigger') != sub_seed(42, 'injection')
    assert sub_seed(42, 'trigger') != sub_seed(43, 'trigger')
    assert 0 <= sub_seed(0xFFFFFFFFFFFFFFFF, 'x') <= 0xFFFFFFFFFFFFFFFF
    # XOR with a fixed tag key is an involution
    assert sub_seed(sub_seed(42, 'sweep'), 'sweep') == 42


def test_map_ordered():
    items = list(range(12))
    expected = [x * x for x in items]
    assert map_ordered(_square, items) == expected
    assert map_ordered(_square, items, jobs=3) == expected
    assert map_ordered(_square, [], jobs=3) == []


def test_clamp():
    assert clamp(-3.0, 0.0, 100.0) == 0.0
    assert clamp(130.0, 0.0, 100.0) == 100.0
    assert clamp(42.5, 0.0, 100.0) == 42.5


def test_verbose_logging():
    from strobewarden.logging import log, get_verbose

    # the test session runs verbose
    assert get_verbose()
    assert log.isEnabledFor(10)
