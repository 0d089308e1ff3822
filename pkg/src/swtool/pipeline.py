# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

import os

import click

from .utils import print_done, exit_on_error


@click.command()
@click.option('--out', 'out_dir', default=None, type=click.Path(file_okay=False), help='Output directory.')
@click.option('--n-trigger', type=int, default=None, help='Trigger corpus size.')
@click.option('--n-train', type=int, default=None, help='Training rows.')
@click.option('--n-test', type=int, default=None, help='Test rows.')
@click.option('--n-colors', type=int, default=None, help='Injection base colors.')
@click.option('--duration', type=int, default=None, help='Length of every generated video in seconds.')
@click.pass_obj
@exit_on_error
def pipeline(cfg, out_dir, n_trigger, n_train, n_test, n_colors, duration):
    '''Run every stage from corpus generation to mitigation and write summary.json.'''
    from strobewarden.pipeline import run_full_pipeline
    from strobewarden.localconfig import override_config

    cfg = override_config(
        cfg,
        output_dir=out_dir,
        n_trigger=n_trigger,
        n_train=n_train,
        n_test=n_test,
        n_colors=n_colors,
        duration=duration,
    )
    summary = run_full_pipeline(cfg)
    print_done(
        'Wrote {} (accuracy {:.3f}, AUC {:.3f})'.format(
            os.path.join(cfg.output_dir, 'summary.json'), summary['eval']['accuracy'], summary['eval']['auc']
        )
    )
