# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

import time

import click
import rich
from rich.table import Table
from rich.console import Console

from .utils import parse_grid, write_lines, exit_on_error


@click.command()
@click.argument('video', type=click.Path(exists=True, dir_okay=False))
@click.option('--out', 'out_fname', default=None, help='Write the report here instead of stdout.')
@exit_on_error
def analyze(video, out_fname):
    '''Run the reference flash analyzer on VIDEO and print its JSON report.'''
    from strobewarden.oracle import report_to_json, classify_risk
    from strobewarden.videoio import read_video

    _, report = classify_risk(read_video(video))
    write_lines([report_to_json(report)], out_fname)


@click.command()
@click.option('--video', required=True, type=click.Path(exists=True, dir_okay=False), help='FGRV1 video.')
@click.option('--model', 'model_fname', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--grid', callback=parse_grid, default=None, help='Trigger grid as WxH (default from config).')
@click.option('--out', 'out_fname', default=None, help='Write the mask log here instead of stdout.')
@click.pass_obj
@exit_on_error
def detect(cfg, video, model_fname, grid, out_fname):
    '''Run the trigger array over a video and emit its per-frame mask log as JSON lines.'''
    from strobewarden.utils import json_compact_dump
    from strobewarden.videoio import read_video
    from strobewarden.detector import load_model, mask_log_row, run_trigger_array

    v = read_video(video)
    activations = run_trigger_array(v, load_model(model_fname), grid or cfg.grid)
    rows = (json_compact_dump(mask_log_row(i, region)) for i, region in enumerate(activations.regions()))
    write_lines(rows, out_fname)


def benchmark_sampling(v, grid):
    '''
    Time the per-frame Lab conversion of the trigger array's sampled pixels
    against the conversion of every pixel of the frame.
    '''
    from strobewarden.colorspace import rgb_to_lab_array
    from strobewarden.detector import TriggerArray, sampling_reduction

    array = TriggerArray(v.width, v.height, threshold=0.0, grid=grid, window=v.fps)

    start = time.perf_counter()
    for frame in v:
        rgb_to_lab_array(array.sample(frame))
    sparse_time = time.perf_counter() - start

    start = time.perf_counter()
    for frame in v:
        rgb_to_lab_array(frame)
    full_time = time.perf_counter() - start

    return {
        'frames': v.frame_count,
        'frame_size': [v.width, v.height],
        'grid': list(grid),
        'sampled_pixels': array.node_count,
        'sampling_reduction': sampling_reduction((v.width, v.height), grid),
        'sparse_fps': v.frame_count / sparse_time if sparse_time > 0 else None,
        'full_fps': v.frame_count / full_time if full_time > 0 else None,
        'speedup': full_time / sparse_time if sparse_time > 0 else None,
    }


@click.command()
@click.option('--video', required=True, type=click.Path(exists=True, dir_okay=False), help='FGRV1 video.')
@click.option('--grid', callback=parse_grid, default=None, help='Trigger grid as WxH (default from config).')
@click.option('--json', 'as_json', is_flag=True, default=False, help='Print JSON instead of a table.')
@click.pass_obj
@exit_on_error
def bench(cfg, video, grid, as_json):
    '''Compare trigger-array sampling throughput with full-frame analysis.'''
    from strobewarden.utils import json_compact_dump
    from strobewarden.videoio import read_video

    res = benchmark_sampling(read_video(video), grid or cfg.grid)
    if as_json:
        click.echo(json_compact_dump(res))
        return

    def fmt(value, spec):
        return 'n/a' if value is None else spec.format(value)

    table = Table(box=rich.box.MINIMAL)
    table.add_column('Measure', no_wrap=True)
    table.add_column('Value', style='magenta', justify='right')
    table.add_row('Frames', str(res['frames']))
    table.add_row('Frame size', '{}x{}'.format(*res['frame_size']))
    table.add_row('Trigger grid', '{}x{}'.format(*res['grid']))
    table.add_row('Sampling reduction', '{:.5f}'.format(res['sampling_reduction']))
    table.add_row('Sparse throughput', fmt(res['sparse_fps'], '{:.1f} frames/s'))
    table.add_row('Full-frame throughput', fmt(res['full_fps'], '{:.1f} frames/s'))
    table.add_row('Speedup', fmt(res['speedup'], '{:.1f}x'))

    console = Console()
    console.print(table)
