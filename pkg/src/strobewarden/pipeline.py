# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

'''
End-to-end reproduction run: generate and label the trigger corpus, train
and evaluate the detector, sweep darkening levels over the injection corpus,
fit the k model and mitigate every risky test video.

Every stage writes plain files into the output directory, so any stage can
be rerun on its own from the artifacts of the stages before it.
'''

import os
import time
from contextlib import contextmanager

import numpy as np
import humanize

import strobewarden.typing as T
from strobewarden.utils import ensure_dir, sub_seed, map_ordered, json_compact_dump, write_json_file
from strobewarden.errors import StageError, StrobeWardenError
from strobewarden.oracle import ANALYSIS_WIDTH, ANALYSIS_HEIGHT, count_flashes
from strobewarden.logging import log
from strobewarden.synthgen import gen_dataset, gen_injection_dataset
from strobewarden.videoio import read_video
from strobewarden.detector import (
    DetectorModel,
    EvalMetricsSchema,
    save_model,
    train_logistic,
    evaluate_manifest,
    sampling_reduction,
)
from strobewarden.localconfig import PipelineConfig, pipeline_config_from_dict
from strobewarden.mitigation import (
    KLevelModel,
    KLevelModelSchema,
    MitigationConfig,
    efficacy,
    fit_k_model,
    run_k_sweep,
    save_k_model,
    write_samples,
    mitigate_stream,
    content_preserved,
    correlation_matrix,
)

# frame size the sparse-sampling savings are quoted for
REFERENCE_FRAME = (1024, 768)

STAGES = ('gen-dataset', 'split', 'train', 'eval', 'gen-injection', 'sweep', 'fit-k', 'mitigate', 'summary')


class _StageTimer:
    def __init__(self):
        self.timings: T.Dict[str, float] = {}

    @contextmanager
    def stage(self, name: str):
        log.info('Stage %s: started', name)
        start = time.monotonic()
        try:
            yield
        except StrobeWardenError as e:
            log.error('Stage %s failed: %s', name, e)
            raise StageError(name, e) from e
        except (OSError, ValueError, ArithmeticError) as e:
            log.error('Stage %s failed: %s', name, e)
            raise StageError(name, e) from e
        elapsed = time.monotonic() - start
        self.timings[name] = round(elapsed, 3)
        log.info('Stage %s: done in %s', name, humanize.naturaldelta(elapsed, minimum_unit='milliseconds'))


def _mitigate_one(job: T.Tuple[str, DetectorModel, KLevelModel, MitigationConfig, T.Tuple[int, int]]):
    fname, dm, km, mcfg, grid = job
    v = read_video(fname)
    pre = count_flashes(v)
    out, mask_log = mitigate_stream(v, dm, km, mcfg, grid)
    post = count_flashes(out)
    return {
        'path': fname,
        'pre_flash_frames': len(pre.flash_frame_indices),
        'post_flash_frames': len(post.flash_frame_indices),
        'post_risky': post.risky,
        'efficacy': efficacy(pre, post) if pre.flash_frame_indices else None,
        'content_preserved': content_preserved(v, out, mask_log),
    }


def _relpath(path: str, base: str) -> str:
    return os.path.relpath(path, base)


def run_full_pipeline(cfg: PipelineConfig) -> T.Dict[str, T.Any]:
    '''
    Run every stage with :cfg and return the summary, which is also written
    to ``summary.json`` in the output directory. Failing stages raise a
    :class:`StageError` naming the stage; artifacts of the stages that
    completed are kept.
    '''
    # revalidate, a hand-built config may violate the split invariant
    cfg = pipeline_config_from_dict(cfg.to_dict())
    out_dir = ensure_dir(cfg.output_dir)
    cfg_dict = cfg.to_dict()
    log.info('Pipeline configuration: %s', json_compact_dump(cfg_dict))
    write_json_file(os.path.join(out_dir, 'config.json'), cfg_dict)

    timer = _StageTimer()
    artifacts: T.Dict[str, str] = {'config': 'config.json'}
    video_overrides = {'duration': cfg.duration, 'fps': cfg.fps, 'width': cfg.width, 'height': cfg.height}

    trigger_dir = os.path.join(out_dir, 'trigger')
    with timer.stage('gen-dataset'):
        dataset = gen_dataset(
            cfg.n_trigger, sub_seed(cfg.seed, 'trigger'), trigger_dir, jobs=cfg.jobs, **video_overrides
        )
        artifacts['trigger_manifest'] = _relpath(dataset.fname, out_dir)

    with timer.stage('split'):
        train_set, test_set = dataset.split(cfg.n_train, cfg.n_test)
        train_set.write(os.path.join(trigger_dir, 'train.csv'))
        test_set.write(os.path.join(trigger_dir, 'test.csv'))
        artifacts['train_manifest'] = _relpath(train_set.fname, out_dir)
        artifacts['test_manifest'] = _relpath(test_set.fname, out_dir)
        n_risky = sum(dataset.labels)
        log.info('Corpus balance: %d risky, %d safe', n_risky, len(dataset) - n_risky)

    with timer.stage('train'):
        model = train_logistic(train_set.features, train_set.labels, cfg.train_epochs, cfg.train_lr)
        save_model(model, os.path.join(out_dir, 'model.json'))
        artifacts['model'] = 'model.json'

    with timer.stage('eval'):
        metrics = evaluate_manifest(model, test_set)
        metrics_dict = EvalMetricsSchema().dump(metrics)
        write_json_file(os.path.join(out_dir, 'eval.json'), metrics_dict)
        artifacts['eval'] = 'eval.json'

    injection_dir = os.path.join(out_dir, 'injection')
    with timer.stage('gen-injection'):
        injection = gen_injection_dataset(
            cfg.n_colors, sub_seed(cfg.seed, 'injection'), injection_dir, cfg.intensities, cfg.injection_rate
        )
        artifacts['injection_manifest'] = _relpath(injection.fname, out_dir)

    with timer.stage('sweep'):
        samples = run_k_sweep(injection, jobs=cfg.jobs, **video_overrides)
        write_samples(samples, os.path.join(out_dir, 'samples.csv'))
        artifacts['samples'] = 'samples.csv'

    with timer.stage('fit-k'):
        kmodel = fit_k_model(samples)
        save_k_model(kmodel, os.path.join(out_dir, 'kmodel.json'))
        artifacts['kmodel'] = 'kmodel.json'
        correlations = correlation_matrix(samples)

    with timer.stage('mitigate'):
        risky_rows = [r for r in test_set if r.oracle_risky]
        jobs = [(test_set.resolve(r), model, kmodel, cfg.mitigation, cfg.grid) for r in risky_rows]
        results = map_ordered(_mitigate_one, jobs, cfg.jobs) if model.threshold is not None else []
        for res in results:
            res['path'] = _relpath(res['path'], out_dir)
        write_json_file(os.path.join(out_dir, 'mitigation.json'), results)
        artifacts['mitigation'] = 'mitigation.json'

        scored = [r['efficacy'] for r in results if r['efficacy'] is not None]
        mean_efficacy = float(np.mean(scored)) if scored else None
        if not risky_rows:
            log.warning('No oracle-risky test videos, mitigation efficacy is undefined')
        elif model.threshold is None:
            log.warning('Detector has no usable threshold, skipped mitigation of %d videos', len(risky_rows))

    with timer.stage('summary'):
        tpr_bias = metrics.tpr >= metrics.tnr - 0.05
        summary = {
            'eval': metrics_dict,
            'detector': {'w': model.w, 'bias': model.bias, 'threshold': model.threshold},
            'kmodel': KLevelModelSchema().dump(kmodel),
            'pearson_kL': kmodel.pearson_kL,
            'correlations': correlations,
            'mitigation': {
                'videos': len(results),
                'mean_efficacy': mean_efficacy,
                'content_preserved': all(r['content_preserved'] for r in results),
            },
            'sampling_reduction': {
                'reference': sampling_reduction(REFERENCE_FRAME, cfg.grid),
                'analysis_raster': sampling_reduction((ANALYSIS_WIDTH, ANALYSIS_HEIGHT), cfg.grid),
            },
            'tpr_bias': {
                'holds': tpr_bias,
                'note': (
                    'true-positive rate is at least the true-negative rate minus 0.05'
                    if tpr_bias
                    else 'true-positive rate {:.3f} is below the true-negative rate {:.3f} by more than 0.05'.format(
                        metrics.tpr, metrics.tnr
                    )
                ),
            },
            'artifacts': artifacts,
        }

    summary['timings'] = timer.timings
    write_json_file(os.path.join(out_dir, 'summary.json'), summary)
    log.info(
        'Pipeline finished in %s: accuracy %.3f, AUC %.3f, r(k, L*) %.3f',
        humanize.naturaldelta(sum(timer.timings.values())),
        metrics.accuracy,
        metrics.auc,
        kmodel.pearson_kL,
    )
    return summary
