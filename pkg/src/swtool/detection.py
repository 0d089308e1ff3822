# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

import click
import rich
from rich.table import Table
from rich.console import Console

from .utils import print_done, print_note, exit_on_error


def _load_manifest(fname, first, count):
    from strobewarden.manifest import DatasetManifest

    manifest = DatasetManifest.read(fname)
    if first is None and count is None:
        return manifest
    first = first or 0
    count = len(manifest) - first if count is None else count
    _, part = manifest.split(first, count)
    return part


@click.command()
@click.option('--manifest', 'manifest_fname', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--out', 'out_fname', required=True, help='Model JSON file to write.')
@click.option('--n-train', type=int, default=None, help='Train on the first N rows only.')
@click.option('--epochs', type=int, default=None, help='Gradient descent epochs.')
@click.option('--lr', type=float, default=None, help='Learning rate.')
@click.pass_obj
@exit_on_error
def train(cfg, manifest_fname, out_fname, n_train, epochs, lr):
    '''Train the logistic flash detector on a labelled manifest.'''
    from strobewarden.detector import save_model, train_logistic

    manifest = _load_manifest(manifest_fname, None if n_train is None else 0, n_train)
    m = train_logistic(manifest.features, manifest.labels, epochs or cfg.train_epochs, lr or cfg.train_lr)
    save_model(m, out_fname)
    if m.threshold is None:
        print_note('The learned weight is not positive, the model has no flash threshold.')
    print_done('Wrote {}'.format(out_fname))


@click.command('eval')
@click.option('--model', 'model_fname', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--manifest', 'manifest_fname', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--skip', type=int, default=None, help='Skip the first N rows (e.g. the training rows).')
@click.option('--n-test', type=int, default=None, help='Evaluate on N rows only.')
@click.option('--out', 'out_fname', default=None, help='Also write the metrics as JSON to this file.')
@click.option('--table', 'as_table', is_flag=True, default=False, help='Print a confusion table instead of JSON.')
@exit_on_error
def evaluate(model_fname, manifest_fname, skip, n_test, out_fname, as_table):
    '''Evaluate a detector model against the oracle labels of a manifest.'''
    from strobewarden.utils import write_json_file, json_compact_dump
    from strobewarden.detector import EvalMetricsSchema, load_model, evaluate_manifest

    metrics = evaluate_manifest(load_model(model_fname), _load_manifest(manifest_fname, skip, n_test))
    data = EvalMetricsSchema().dump(metrics)
    if out_fname:
        write_json_file(out_fname, data)
    if not as_table:
        click.echo(json_compact_dump(data))
        return

    table = Table(box=rich.box.MINIMAL)
    table.add_column('', no_wrap=True)
    table.add_column('Predicted risky', justify='right')
    table.add_column('Predicted safe', justify='right')
    table.add_row('Risky', str(metrics.tp), str(metrics.fn))
    table.add_row('Safe', str(metrics.fp), str(metrics.tn))

    console = Console()
    console.print(table)
    console.print(
        'Accuracy {:.3f} (z={:.3f}, p={:.3g}), AUC {:.4f}, TPR {:.3f}, TNR {:.3f}'.format(
            metrics.accuracy, metrics.z_score, metrics.p_value, metrics.auc, metrics.tpr, metrics.tnr
        )
    )
