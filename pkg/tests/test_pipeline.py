# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

import os
import json

import pytest

from strobewarden.errors import StageError, ConfigError
from strobewarden.pipeline import run_full_pipeline
from strobewarden.localconfig import (
    PipelineConfig,
    override_config,
    load_pipeline_config,
    pipeline_config_from_dict,
)


def test_config_defaults():
    cfg = PipelineConfig()
    assert (cfg.n_trigger, cfg.n_train, cfg.n_test, cfg.n_colors) == (1000, 800, 200, 200)
    assert cfg.grid == (50, 50)
    assert cfg.intensities == [10, 20, 30, 40, 50, 60, 70, 80, 90]
    assert pipeline_config_from_dict({}) == cfg


def test_config_validation(localconfig):
    cfg = localconfig.pipeline

    with pytest.raises(ConfigError):
        override_config(cfg, n_train=40)
    with pytest.raises(ConfigError):
        override_config(cfg, injection_rate=16)
    with pytest.raises(ConfigError):
        override_config(cfg, grid_w=65)
    with pytest.raises(ConfigError):
        pipeline_config_from_dict({'intensities': [15]})
    with pytest.raises(ConfigError):
        pipeline_config_from_dict({'mitigation': {'overlay_alpha': 1.5}})

    # None values leave the setting alone
    assert override_config(cfg, seed=None, jobs=2).seed == 7
    assert override_config(cfg, seed=None, jobs=2).jobs == 2


def test_config_json(localconfig, tmp_path):
    fname = tmp_path / 'config.json'
    fname.write_text(json.dumps(localconfig.pipeline.to_dict()))
    assert load_pipeline_config(fname) == localconfig.pipeline

    with pytest.raises(ConfigError):
        load_pipeline_config(tmp_path / 'nonexistent.toml')


def _summary_without_timings(out_dir):
    with open(os.path.join(out_dir, 'summary.json'), 'r') as f:
        summary = json.load(f)
    del summary['timings']
    return summary


def test_full_pipeline(localconfig, tmp_path):
    out_a = str(tmp_path / 'run-a')
    cfg = override_config(localconfig.pipeline, output_dir=out_a)
    summary = run_full_pipeline(cfg)

    for fname in (
        'config.json',
        'trigger/manifest.csv',
        'trigger/train.csv',
        'trigger/test.csv',
        'model.json',
        'eval.json',
        'injection/injection-manifest.csv',
        'samples.csv',
        'kmodel.json',
        'mitigation.json',
        'summary.json',
    ):
        assert os.path.isfile(os.path.join(out_a, fname)), fname
    assert len(os.listdir(os.path.join(out_a, 'trigger', 'videos'))) == 40

    assert load_pipeline_config(os.path.join(out_a, 'config.json')) == cfg
    assert set(summary.keys()) == {
        'eval',
        'detector',
        'kmodel',
        'pearson_kL',
        'correlations',
        'mitigation',
        'sampling_reduction',
        'tpr_bias',
        'artifacts',
        'timings',
    }
    assert summary['eval']['tp'] + summary['eval']['fp'] + summary['eval']['tn'] + summary['eval']['fn'] == 12
    assert 0.0 <= summary['eval']['auc'] <= 1.0
    assert summary['sampling_reduction']['reference'] == pytest.approx(1 - 80 / (1024 * 768))
    assert summary['sampling_reduction']['analysis_raster'] == pytest.approx(1 - 80 / (341 * 256))
    assert summary['mitigation']['content_preserved']
    assert set(summary['timings'].keys()) == {
        'gen-dataset',
        'split',
        'train',
        'eval',
        'gen-injection',
        'sweep',
        'fit-k',
        'mitigate',
        'summary',
    }
    for path in summary['artifacts'].values():
        assert not os.path.isabs(path)
        assert os.path.isfile(os.path.join(out_a, path))

    with open(os.path.join(out_a, 'samples.csv'), 'r') as f:
        assert len(f.read().splitlines()) == 1 + 5 * 3

    # same seed, more workers: identical results
    out_b = str(tmp_path / 'run-b')
    run_full_pipeline(override_config(cfg, output_dir=out_b, jobs=2))
    assert _summary_without_timings(out_a) == _summary_without_timings(out_b)
    for fname in ('trigger/manifest.csv', 'samples.csv', 'model.json', 'kmodel.json', 'eval.json'):
        with open(os.path.join(out_a, fname), 'rb') as fa, open(os.path.join(out_b, fname), 'rb') as fb:
            assert fa.read() == fb.read(), fname


def test_pipeline_stage_error(localconfig, tmp_path, monkeypatch):
    import strobewarden.pipeline

    def broken_gen_dataset(*args, **kwargs):
        raise OSError('No space left on device')

    monkeypatch.setattr(strobewarden.pipeline, 'gen_dataset', broken_gen_dataset)

    out_dir = str(tmp_path / 'run')
    with pytest.raises(StageError) as e:
        run_full_pipeline(override_config(localconfig.pipeline, output_dir=out_dir))
    assert e.value.stage == 'gen-dataset'
    assert isinstance(e.value.cause, OSError)
    assert 'gen-dataset' in str(e.value)

    # the configuration is written before any stage runs
    assert os.path.isfile(os.path.join(out_dir, 'config.json'))
    assert not os.path.isfile(os.path.join(out_dir, 'summary.json'))


def test_pipeline_rejects_invalid_config(tmp_path):
    cfg = PipelineConfig(n_trigger=10, n_train=8, n_test=8, output_dir=str(tmp_path / 'run'))
    with pytest.raises(ConfigError):
        run_full_pipeline(cfg)
    assert not os.path.exists(tmp_path / 'run')
