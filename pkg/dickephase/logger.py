"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"
"""

import sys
import click

verbose_logging = False
debug_logging = False


def debug(msg, *args):
    """Logs a message to stdout only if debug is enabled."""
    if debug_logging:
        info(msg, *args)


def verbose(msg, *args):
    """Logs a message to stdout only if verbose is enabled."""
    if verbose_logging:
        info(msg, *args)


def info(msg, *args):
    """Logs a message to stdout."""
    if args:
        msg %= args
    click.echo(msg, file=sys.stdout)


def warning(msg, *args):
    """Logs a message to stderr without failing the command"""
    if args:
        msg %= args
    click.echo(click.style(msg, fg="yellow"), file=sys.stderr)


def error(msg, *args):
    """Logs a message to stderr"""
    if args:
        msg %= args
    click.echo(click.style(msg, fg="red", bold=True), file=sys.stderr)


def progress(done, total, what="cells"):
    """Logs a sweep progress line if verbose is enabled, roughly every tenth of the work."""
    if not verbose_logging or total <= 0:
        return
    step = max(1, total // 10)
    if done == total or done % step == 0:
        info(f"  {done}/{total} {what} ({100.0 * done / total:.0f}%)")
