# -*- coding: utf-8 -*-
#
# Copyright (C) 2016-2022 Matthias Klumpp <matthias@tenstral.net>
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

import sys

import click

from swtool.utils import print_error_exit

__mainfile = None


@click.group(invoke_without_command=True)
@click.option('--verbose', envvar='VERBOSE', default=False, is_flag=True, help='Enable debug messages.')
@click.option('--version', default=False, is_flag=True, help='Display the version of StrobeWarden itself.')
@click.option('--config', 'config_fname', default=None, type=str, help='Pipeline configuration file (TOML or JSON).')
@click.option('--seed', default=None, type=int, help='Override the global random seed.')
@click.option('--jobs', '-j', default=None, type=int, help='Number of worker processes for per-video work.')
@click.pass_context
def cli(ctx, verbose, version, config_fname, seed, jobs):
    '''Detect and mitigate seizure-inducing flashes in video.

    Generates labelled synthetic corpora, trains the flash detector,
    fits the darkening model and filters videos, either stage by stage
    or as one reproducible pipeline run.'''
    from strobewarden import LocalConfig
    from strobewarden.errors import StrobeWardenError
    from strobewarden.localconfig import override_config

    if verbose:
        from strobewarden.logging import set_verbose

        set_verbose(True)
    if version:
        from strobewarden import __version__

        print(__version__)
        sys.exit(0)

    try:
        lconf = LocalConfig(config_fname)
        ctx.obj = override_config(lconf.pipeline, seed=seed, jobs=jobs)
    except StrobeWardenError as e:
        print_error_exit('Error: {}'.format(e))

    if ctx.invoked_subcommand is None:
        click.echo('No subcommand was provided. Can not continue.')
        sys.exit(1)


def _register_commands():
    '''Register sw-tool subcommands.'''

    import swtool.corpus as corpus

    cli.add_command(corpus.gen_dataset)
    cli.add_command(corpus.gen_injection)

    import swtool.analysis as analysis

    cli.add_command(analysis.analyze)
    cli.add_command(analysis.detect)
    cli.add_command(analysis.bench)

    import swtool.detection as detection

    cli.add_command(detection.train)
    cli.add_command(detection.evaluate)

    import swtool.mitigation as mitigation

    cli.add_command(mitigation.sweep)
    cli.add_command(mitigation.fit_k)
    cli.add_command(mitigation.mitigate)

    import swtool.pipeline as pipeline

    cli.add_command(pipeline.pipeline)


_register_commands()


def run(mainfile, args):
    if len(args) == 0:
        print('Need a subcommand to proceed!')
        sys.exit(1)

    global __mainfile
    __mainfile = mainfile

    cli()  # pylint: disable=no-value-for-parameter
