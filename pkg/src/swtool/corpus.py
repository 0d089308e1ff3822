# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

import click

from .utils import print_done, exit_on_error, parse_int_list


@click.command('gen-dataset')
@click.option('--n', 'count', type=int, default=None, help='Number of videos (default: n_trigger from the config).')
@click.option('--out', 'out_dir', required=True, type=click.Path(file_okay=False), help='Corpus directory.')
@click.option('--duration', type=int, default=None, help='Video length in seconds.')
@click.option('--seed', type=int, default=None, help='Corpus seed, used unchanged (default: derived from --seed).')
@click.pass_obj
@exit_on_error
def gen_dataset(cfg, count, out_dir, duration, seed):
    '''Generate and label the trigger-detection corpus.'''
    from strobewarden.utils import sub_seed
    from strobewarden.synthgen import gen_dataset as do_gen_dataset

    manifest = do_gen_dataset(
        count or cfg.n_trigger,
        seed if seed is not None else sub_seed(cfg.seed, 'trigger'),
        out_dir,
        jobs=cfg.jobs,
        duration=duration or cfg.duration,
        fps=cfg.fps,
        width=cfg.width,
        height=cfg.height,
    )
    n_risky = sum(manifest.labels)
    print_done('Wrote {} ({} risky, {} safe)'.format(manifest.fname, n_risky, len(manifest) - n_risky))


@click.command('gen-injection')
@click.option('--colors', 'n_colors', type=int, default=None, help='Number of random base colors.')
@click.option('--out', 'out_dir', required=True, type=click.Path(file_okay=False), help='Corpus directory.')
@click.option(
    '--intensities', callback=parse_int_list, default=None, help='Comma-separated flash intensities in percent.'
)
@click.option('--rate', type=int, default=None, help='Injected flashes per second.')
@click.option('--write-videos', is_flag=True, default=False, help='Also write every video to disk.')
@click.option('--seed', type=int, default=None, help='Corpus seed, used unchanged (default: derived from --seed).')
@click.pass_obj
@exit_on_error
def gen_injection(cfg, n_colors, out_dir, intensities, rate, write_videos, seed):
    '''Generate the white-flash injection corpus used by the k-level sweep.'''
    from strobewarden.utils import sub_seed
    from strobewarden.synthgen import gen_injection_dataset

    manifest = gen_injection_dataset(
        n_colors or cfg.n_colors,
        seed if seed is not None else sub_seed(cfg.seed, 'injection'),
        out_dir,
        intensities=intensities or cfg.intensities,
        rate=rate or cfg.injection_rate,
        write_videos=write_videos,
        duration=cfg.duration,
        fps=cfg.fps,
        width=cfg.width,
        height=cfg.height,
    )
    print_done('Wrote {} ({} rows)'.format(manifest.fname, len(manifest)))
