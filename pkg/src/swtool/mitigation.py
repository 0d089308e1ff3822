# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

import click
import rich
from rich.table import Table
from rich.console import Console

from .utils import parse_grid, print_done, write_lines, exit_on_error


@click.command()
@click.option('--injection-manifest', 'manifest_fname', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--out', 'out_fname', required=True, help='Samples CSV to write.')
@click.option('--curves', 'curves_fname', default=None, help='Also write the per-color (intensity, k) curves as JSON.')
@click.pass_obj
@exit_on_error
def sweep(cfg, manifest_fname, out_fname, curves_fname):
    '''Find the minimum darkening level of every injection video.'''
    from strobewarden.manifest import InjectionManifest
    from strobewarden.utils import write_json_file
    from strobewarden.mitigation import k_curves, run_k_sweep, write_samples

    samples = run_k_sweep(
        InjectionManifest.read(manifest_fname),
        jobs=cfg.jobs,
        duration=cfg.duration,
        fps=cfg.fps,
        width=cfg.width,
        height=cfg.height,
    )
    write_samples(samples, out_fname)
    if curves_fname:
        curves = [
            {'lab': [float(c) for c in lab], 'points': [[int(i), int(k)] for i, k in points]}
            for lab, points in k_curves(samples).items()
        ]
        write_json_file(curves_fname, curves)

    by_intensity = {}
    for s in samples:
        by_intensity.setdefault(s.intensity, []).append(s.min_k)

    table = Table(box=rich.box.MINIMAL)
    table.add_column('Intensity', justify='right')
    table.add_column('Videos', justify='right')
    table.add_column('Mean k', style='magenta', justify='right')
    table.add_column('Max k', justify='right')
    for intensity in sorted(by_intensity):
        ks = by_intensity[intensity]
        table.add_row('{}%'.format(intensity), str(len(ks)), '{:.1f}'.format(sum(ks) / len(ks)), str(max(ks)))
    Console(stderr=True).print(table)
    print_done('Wrote {} ({} samples)'.format(out_fname, len(samples)))


@click.command('fit-k')
@click.option('--samples', 'samples_fname', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--out', 'out_fname', required=True, help='k model JSON file to write.')
@exit_on_error
def fit_k(samples_fname, out_fname):
    '''Fit the darkening-level model to sweep samples.'''
    from strobewarden.mitigation import fit_k_model, read_samples, save_k_model

    m = fit_k_model(read_samples(samples_fname))
    save_k_model(m, out_fname)
    print_done('Wrote {} (r(k, L*) = {:.3f})'.format(out_fname, m.pearson_kL))


@click.command()
@click.option('--video', required=True, type=click.Path(exists=True, dir_okay=False), help='FGRV1 video.')
@click.option('--model', 'model_fname', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--kmodel', 'kmodel_fname', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--out', 'out_fname', required=True, help='Mitigated FGRV1 video to write.')
@click.option('--mask-log', 'mask_log_fname', default=None, help='JSON-lines mask log (default: OUT.masks.jsonl).')
@click.option('--grid', callback=parse_grid, default=None, help='Trigger grid as WxH (default from config).')
@click.pass_obj
@exit_on_error
def mitigate(cfg, video, model_fname, kmodel_fname, out_fname, mask_log_fname, grid):
    '''Filter flashing regions of a video with smoothing and darkening.'''
    from strobewarden.utils import json_compact_dump
    from strobewarden.oracle import count_flashes
    from strobewarden.videoio import read_video, write_video
    from strobewarden.detector import load_model
    from strobewarden.mitigation import efficacy, load_k_model, mitigate_stream

    v = read_video(video)
    out, mask_log = mitigate_stream(
        v, load_model(model_fname), load_k_model(kmodel_fname), cfg.mitigation, grid or cfg.grid
    )
    write_video(out, out_fname)
    if not mask_log_fname:
        mask_log_fname = out_fname + '.masks.jsonl'
    write_lines((json_compact_dump(row) for row in mask_log), mask_log_fname)

    pre = count_flashes(v)
    if pre.flash_frame_indices:
        post = count_flashes(out)
        print_done(
            'Wrote {}: {} of {} flash frames left, efficacy {:.1f}%'.format(
                out_fname, len(post.flash_frame_indices), len(pre.flash_frame_indices), efficacy(pre, post)
            )
        )
    else:
        print_done('Wrote {}: input had no flash frames'.format(out_fname))
