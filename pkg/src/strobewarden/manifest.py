# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

'''
CSV manifests describing the generated corpora.

Video paths are stored relative to the directory of the manifest file, so a
corpus directory can be moved around without invalidating its manifest.
'''

import os
import csv
from dataclasses import dataclass

import strobewarden.typing as T
from strobewarden.errors import StrobeWardenError

TRIGGER_MANIFEST_FIELDS = [
    'path',
    'background_flashing',
    'background_rate',
    'has_shape',
    'shape_kind',
    'shape_size',
    'shape_flashing',
    'shape_rate',
    'oracle_risky',
    'f_avg',
]

INJECTION_MANIFEST_FIELDS = ['path', 'seed', 'base_r', 'base_g', 'base_b', 'intensity', 'flash_rate']


class ManifestError(StrobeWardenError):
    pass


def format_bool(value: bool) -> str:
    return 'true' if value else 'false'


def parse_bool(value: str) -> bool:
    if value == 'true':
        return True
    if value == 'false':
        return False
    raise ManifestError('Invalid boolean value in manifest: {!r}'.format(value))


@dataclass(frozen=True)
class TriggerManifestRow:
    path: str
    background_flashing: bool
    background_rate: int
    has_shape: bool
    shape_kind: str
    shape_size: float
    shape_flashing: bool
    shape_rate: int
    oracle_risky: bool
    f_avg: float

    def to_csv_dict(self) -> T.Dict[str, str]:
        return {
            'path': self.path,
            'background_flashing': format_bool(self.background_flashing),
            'background_rate': str(self.background_rate),
            'has_shape': format_bool(self.has_shape),
            'shape_kind': self.shape_kind,
            'shape_size': '{:.3f}'.format(self.shape_size),
            'shape_flashing': format_bool(self.shape_flashing),
            'shape_rate': str(self.shape_rate),
            'oracle_risky': format_bool(self.oracle_risky),
            'f_avg': repr(float(self.f_avg)),
        }

    @classmethod
    def from_csv_dict(cls, d: T.Dict[str, str]) -> 'TriggerManifestRow':
        return cls(
            path=d['path'],
            background_flashing=parse_bool(d['background_flashing']),
            background_rate=int(d['background_rate']),
            has_shape=parse_bool(d['has_shape']),
            shape_kind=d['shape_kind'],
            shape_size=float(d['shape_size']),
            shape_flashing=parse_bool(d['shape_flashing']),
            shape_rate=int(d['shape_rate']),
            oracle_risky=parse_bool(d['oracle_risky']),
            f_avg=float(d['f_avg']),
        )


@dataclass(frozen=True)
class InjectionManifestRow:
    path: str
    seed: int
    base_color: T.RGB
    intensity: int
    flash_rate: int

    def to_csv_dict(self) -> T.Dict[str, str]:
        return {
            'path': self.path,
            'seed': str(self.seed),
            'base_r': str(self.base_color[0]),
            'base_g': str(self.base_color[1]),
            'base_b': str(self.base_color[2]),
            'intensity': str(self.intensity),
            'flash_rate': str(self.flash_rate),
        }

    @classmethod
    def from_csv_dict(cls, d: T.Dict[str, str]) -> 'InjectionManifestRow':
        return cls(
            path=d['path'],
            seed=int(d['seed']),
            base_color=(int(d['base_r']), int(d['base_g']), int(d['base_b'])),
            intensity=int(d['intensity']),
            flash_rate=int(d['flash_rate']),
        )


class Manifest:
    '''
    An ordered list of manifest rows, optionally tied to the CSV file
    it was read from or written to.
    '''

    row_type: T.Any = None
    fields: T.List[str] = []

    def __init__(self, rows=None, fname: T.Optional[T.PathUnion] = None):
        self.rows = list(rows) if rows else []
        self.fname = str(fname) if fname else None

    @property
    def base_dir(self) -> str:
        if not self.fname:
            return os.getcwd()
        return os.path.dirname(os.path.abspath(self.fname))

    def resolve(self, row) -> str:
        '''Absolute location of the video a row refers to.'''
        if os.path.isabs(row.path):
            return row.path
        return os.path.join(self.base_dir, row.path)

    def write(self, fname: T.PathUnion):
        with open(fname, 'w', encoding='utf-8', newline='') as f:
            writer = csv.DictWriter(f, fieldnames=self.fields, lineterminator='\n')
            writer.writeheader()
            for row in self.rows:
                writer.writerow(row.to_csv_dict())
        self.fname = str(fname)

    @classmethod
    def read(cls, fname: T.PathUnion):
        with open(fname, 'r', encoding='utf-8', newline='') as f:
            reader = csv.DictReader(f)
            if reader.fieldnames != cls.fields:
                raise ManifestError(
                    '{}: unexpected manifest header {} (expected {})'.format(fname, reader.fieldnames, cls.fields)
                )
            rows = [cls.row_type.from_csv_dict(d) for d in reader]
        return cls(rows, fname)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


class DatasetManifest(Manifest):
    '''Manifest of the trigger-detection corpus, including oracle labels.'''

    row_type = TriggerManifestRow
    fields = TRIGGER_MANIFEST_FIELDS

    @property
    def features(self) -> T.List[float]:
        return [r.f_avg for r in self.rows]

    @property
    def labels(self) -> T.List[bool]:
        return [r.oracle_risky for r in self.rows]

    def split(self, n_train: int, n_test: int) -> T.Tuple['DatasetManifest', 'DatasetManifest']:
        '''Split into a training set (first :n_train rows) and the following :n_test rows.'''
        if n_train + n_test > len(self.rows):
            raise ManifestError(
                'Can not split {} rows into {} training and {} test rows'.format(len(self.rows), n_train, n_test)
            )
        train = DatasetManifest(self.rows[:n_train])
        test = DatasetManifest(self.rows[n_train : n_train + n_test])
        train.fname = test.fname = self.fname
        return train, test


class InjectionManifest(Manifest):
    '''Manifest of the white-flash injection corpus.'''

    row_type = InjectionManifestRow
    fields = INJECTION_MANIFEST_FIELDS
