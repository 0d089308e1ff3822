# -*- coding: utf-8 -*-
#
# Copyright (C) 2016-2022 Matthias Klumpp <matthias@tenstral.net>
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

import os
import json
from dataclasses import field, asdict, dataclass

import toml
from marshmallow import Schema, ValidationError, fields, validate, post_load, validates_schema

import strobewarden.typing as T
from strobewarden.errors import ConfigError
from strobewarden.oracle import ANALYSIS_WIDTH, ANALYSIS_HEIGHT
from strobewarden.synthgen import DEFAULT_FPS, DEFAULT_DURATION, INJECTION_INTENSITIES, DEFAULT_INJECTION_RATE
from strobewarden.detector.model import DEFAULT_EPOCHS, DEFAULT_LEARNING_RATE
from strobewarden.mitigation.stream import MitigationConfig, MitigationConfigSchema

PIPELINE_CONFIG_NAME = 'pipeline-config.toml'


def get_config_file(fname):
    '''
    Determine the path of a local StrobeWarden configuration file.
    '''

    path = os.path.join('/etc/strobewarden/', fname)
    if os.path.isfile(path):
        return path
    path = os.path.join('config', fname)
    if os.path.isfile(path):
        return path
    return None


@dataclass
class PipelineConfig:
    '''Every knob of a full reproduction run.'''

    seed: int = 42
    n_trigger: int = 1000
    n_train: int = 800
    n_test: int = 200
    n_colors: int = 200
    intensities: T.List[int] = field(default_factory=lambda: list(INJECTION_INTENSITIES))
    injection_rate: int = DEFAULT_INJECTION_RATE
    duration: int = DEFAULT_DURATION
    fps: int = DEFAULT_FPS
    width: int = ANALYSIS_WIDTH
    height: int = ANALYSIS_HEIGHT
    grid_w: int = 50
    grid_h: int = 50
    train_epochs: int = DEFAULT_EPOCHS
    train_lr: float = DEFAULT_LEARNING_RATE
    jobs: int = 1
    output_dir: str = 'sw-output'
    mitigation: MitigationConfig = field(default_factory=MitigationConfig)

    @property
    def grid(self) -> T.Tuple[int, int]:
        return (self.grid_w, self.grid_h)

    def to_dict(self) -> T.Dict[str, T.Any]:
        return PipelineConfigSchema().dump(self)


class PipelineConfigSchema(Schema):
    seed = fields.Int(load_default=42, validate=validate.Range(0, 0xFFFFFFFFFFFFFFFF))
    n_trigger = fields.Int(load_default=1000, validate=validate.Range(min=2))
    n_train = fields.Int(load_default=800, validate=validate.Range(min=1))
    n_test = fields.Int(load_default=200, validate=validate.Range(min=1))
    n_colors = fields.Int(load_default=200, validate=validate.Range(min=1))
    intensities = fields.List(
        fields.Int(validate=validate.OneOf(INJECTION_INTENSITIES)),
        load_default=lambda: list(INJECTION_INTENSITIES),
        validate=validate.Length(min=1),
    )
    injection_rate = fields.Int(load_default=DEFAULT_INJECTION_RATE, validate=validate.Range(min=1))
    duration = fields.Int(load_default=DEFAULT_DURATION, validate=validate.Range(min=1))
    fps = fields.Int(load_default=DEFAULT_FPS, validate=validate.Range(min=2))
    width = fields.Int(load_default=ANALYSIS_WIDTH, validate=validate.Range(min=1))
    height = fields.Int(load_default=ANALYSIS_HEIGHT, validate=validate.Range(min=1))
    grid_w = fields.Int(load_default=50, validate=validate.Range(min=1))
    grid_h = fields.Int(load_default=50, validate=validate.Range(min=1))
    train_epochs = fields.Int(load_default=DEFAULT_EPOCHS, validate=validate.Range(min=1))
    train_lr = fields.Float(load_default=DEFAULT_LEARNING_RATE, validate=validate.Range(min=0, min_inclusive=False))
    jobs = fields.Int(load_default=1, validate=validate.Range(min=1))
    output_dir = fields.Str(load_default='sw-output')
    mitigation = fields.Nested(MitigationConfigSchema, load_default=lambda: MitigationConfig())

    @validates_schema
    def validate_split(self, data, **kwargs):
        n_trigger = data.get('n_trigger', 1000)
        n_train = data.get('n_train', 800)
        n_test = data.get('n_test', 200)
        if n_train + n_test > n_trigger:
            raise ValidationError(
                'n_train + n_test ({}) exceeds n_trigger ({})'.format(n_train + n_test, n_trigger), 'n_train'
            )
        fps = data.get('fps', DEFAULT_FPS)
        rate = data.get('injection_rate', DEFAULT_INJECTION_RATE)
        if 2 * rate > fps:
            raise ValidationError('Injection rate {} too high for {} fps'.format(rate, fps), 'injection_rate')
        width = data.get('width', ANALYSIS_WIDTH)
        height = data.get('height', ANALYSIS_HEIGHT)
        if data.get('grid_w', 50) > width or data.get('grid_h', 50) > height:
            raise ValidationError('Trigger grid does not fit into {}x{} frames'.format(width, height), 'grid_w')

    @post_load
    def make_config(self, data, **kwargs):
        return PipelineConfig(**data)


def pipeline_config_from_dict(data: T.Dict[str, T.Any]) -> PipelineConfig:
    try:
        return PipelineConfigSchema().load(data)
    except ValidationError as e:
        raise ConfigError('Invalid pipeline configuration: {}'.format(e.messages)) from e


def load_pipeline_config(fname: T.PathUnion) -> PipelineConfig:
    '''Read a pipeline configuration from a JSON file, or a TOML file otherwise.'''
    fname = str(fname)
    try:
        with open(fname, 'r', encoding='utf-8') as f:
            if fname.endswith('.json'):
                data = json.load(f)
            else:
                data = toml.load(f)
    except (OSError, ValueError) as e:
        raise ConfigError('Unable to read configuration {}: {}'.format(fname, e)) from e
    return pipeline_config_from_dict(data)


def override_config(cfg: PipelineConfig, **changes) -> PipelineConfig:
    '''Copy of :cfg with the non-None :changes applied and revalidated.'''
    data = cfg.to_dict()
    data.update({k: v for k, v in changes.items() if v is not None})
    return pipeline_config_from_dict(data)


class LocalConfig:
    '''
    Local, machine-specific pipeline configuration.
    Falls back to the built-in defaults if no configuration file exists.
    '''

    instance = None

    class __LocalConfig:
        def __init__(self, fname=None):
            if not fname:
                fname = get_config_file(PIPELINE_CONFIG_NAME)
            self.fname = fname

            if fname:
                if not os.path.isfile(fname):
                    raise ConfigError('Configuration file {} does not exist'.format(fname))
                self._pipeline = load_pipeline_config(fname)
            else:
                self._pipeline = PipelineConfig()

        @property
        def pipeline(self) -> PipelineConfig:
            return self._pipeline

        @property
        def mitigation(self) -> MitigationConfig:
            return self._pipeline.mitigation

        def as_dict(self) -> T.Dict[str, T.Any]:
            return asdict(self._pipeline)

    def __init__(self, fname=None):
        # an explicitly requested file replaces whatever was loaded before
        if not LocalConfig.instance or (fname and LocalConfig.instance.fname != fname):
            LocalConfig.instance = LocalConfig.__LocalConfig(fname)

    def __getattr__(self, name):
        return getattr(self.instance, name)
