# -*- coding: utf-8 -*-
#
# Copyright (C) 2018-2022 Matthias Klumpp <matthias@tenstral.net>
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

import os
import shutil

import numpy as np
import pytest


@pytest.fixture(scope='session')
def samples_dir():
    '''
    Fixture responsible for returning the location of static
    test data the test may use.
    '''
    from . import source_root

    samples_dir = os.path.join(source_root, 'tests', 'test_data')
    if not os.path.isdir(samples_dir):
        raise Exception('Unable to find test samples directory in {}'.format(samples_dir))
    return samples_dir


@pytest.fixture(scope='session', autouse=True)
def localconfig(samples_dir, tmp_path_factory):
    '''
    Retrieve a StrobeWarden LocalConfig object which is set
    up for testing.
    '''
    import toml

    from strobewarden import LocalConfig
    from strobewarden.logging import set_verbose

    # enable verbose logging for tests
    set_verbose(True)

    work_dir = str(tmp_path_factory.mktemp('swconf'))
    config_tmpl_fname = os.path.join(samples_dir, 'config', 'pipeline-config.toml')
    with open(config_tmpl_fname, 'r') as f:
        config_toml = toml.load(f)

    out_dir = os.path.join(work_dir, 'output')
    config_toml['output_dir'] = out_dir
    config_fname = os.path.join(work_dir, 'pipeline-config.toml')
    with open(config_fname, 'w') as f:
        toml.dump(config_toml, f)

    conf = LocalConfig(config_fname)
    conf = LocalConfig.instance
    assert conf.fname == config_fname
    assert conf.pipeline.seed == 7
    assert conf.pipeline.grid == (10, 8)
    assert conf.pipeline.output_dir == out_dir
    assert conf.mitigation.assumed_intensity == 70

    yield conf

    if os.path.isdir(out_dir):
        shutil.rmtree(out_dir)


def _solid_frames(colors, width, height):
    colors = np.asarray(colors, dtype=np.uint8)
    return np.broadcast_to(colors[:, None, None, :], (len(colors), height, width, 3)).copy()


@pytest.fixture(scope='session')
def make_video():
    '''
    Factory for small full-frame test videos: one solid color per frame.
    '''
    from strobewarden.videoio import VideoBuffer

    def _make(colors, width=32, height=24, fps=30):
        return VideoBuffer(width, height, fps, _solid_frames(colors, width, height))

    return _make


@pytest.fixture(scope='session')
def strobe_video(make_video):
    '''One second of full-frame black/white alternation on every frame, starting black.'''
    colors = [(0, 0, 0) if i % 2 == 0 else (255, 255, 255) for i in range(30)]
    return make_video(colors)


@pytest.fixture(scope='session')
def static_video(make_video):
    return make_video([(90, 120, 30)] * 60)


@pytest.fixture(scope='session')
def trained_detector():
    '''A detector that separates videos with a mean flash metric above 20 from calmer ones.'''
    from strobewarden.detector import train_logistic

    features = [float(f) for f in range(0, 41, 2)]
    labels = [f > 20 for f in features]
    return train_logistic(features, labels, epochs=3000, lr=0.5)
