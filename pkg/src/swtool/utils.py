# -*- coding: utf-8 -*-
#
# Copyright (C) 2016-2022 Matthias Klumpp <matthias@tenstral.net>
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

import re
import sys
import functools

import click

from strobewarden.errors import StageError, StrobeWardenError

_GRID_RE = re.compile(r'^(\d+)[xX](\d+)$')


def print_done(msg):
    print('-> {}'.format(msg))


def print_note(msg):
    print('! {}'.format(msg), file=sys.stderr)


def print_error_exit(msg, code=1):
    print(msg, file=sys.stderr)
    sys.exit(code)


def parse_grid(ctx, param, value):
    '''Click callback turning "WxH" into a (W, H) tuple.'''
    if value is None or isinstance(value, tuple):
        return value
    m = _GRID_RE.match(value)
    if not m:
        raise click.BadParameter('expected a grid size like 50x50, got "{}"'.format(value))
    return int(m.group(1)), int(m.group(2))


def parse_int_list(ctx, param, value):
    if value is None:
        return None
    try:
        return [int(v) for v in value.split(',') if v.strip()]
    except ValueError:
        raise click.BadParameter('expected a comma-separated list of integers, got "{}"'.format(value))


def exit_on_error(f):
    '''Report library errors as a message on stderr and a nonzero exit code.'''

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except StageError as e:
            print_error_exit('Pipeline stage "{}" failed: {}'.format(e.stage, e.cause), 2)
        except StrobeWardenError as e:
            print_error_exit('Error: {}'.format(e))
        except OSError as e:
            print_error_exit('Error: {}'.format(e))

    return wrapper


def write_lines(lines, fname=None):
    '''Write text lines to :fname, or to stdout if no file name is given.'''
    if fname:
        with open(fname, 'w', encoding='utf-8') as f:
            for line in lines:
                f.write(line + '\n')
    else:
        for line in lines:
            click.echo(line)
