# -*- coding: utf-8 -*-
#
# Copyright (C) 2016-2022 Matthias Klumpp <matthias@tenstral.net>
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

import os
import hashlib
from concurrent.futures import ProcessPoolExecutor

import strobewarden.typing as T

U64_MASK = 0xFFFFFFFFFFFFFFFF


def sub_seed(seed: int, tag: str) -> int:
    '''
    Derive a named 64-bit seed for a pipeline stage from the global seed,
    so stages can be rerun independently with identical randomness.
    '''
    digest = hashlib.sha256(tag.encode('utf-8')).digest()
    return (seed ^ int.from_bytes(digest[:8], 'little')) & U64_MASK


def ensure_dir(path: T.PathUnion) -> str:
    path = str(path)
    os.makedirs(path, exist_ok=True)
    return path


def clamp(value: float, lo: float, hi: float) -> float:
    return max(lo, min(hi, value))


def map_ordered(fn: T.Callable, items: T.Iterable, jobs: int = 1) -> list:
    '''
    Apply :fn to every item, fanning out to a process pool if :jobs > 1.
    Results are always returned in input order, so the output does not
    depend on worker scheduling.
    '''
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]

    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as executor:
        return list(executor.map(fn, items))
