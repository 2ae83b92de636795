#!/usr/bin/env python3
"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"
"""

import click

from dickephase import commands
from dickephase.__version__ import dickephase_tool_name, dickephase_tool_version


class NaturalOrderGroup(click.Group):
    """lists commands in the order they were added, usage errors exit with 1 like parameter errors"""

    def list_commands(self, ctx):
        return self.commands.keys()

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as e:
            e.exit_code = 1
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = 1
            raise


@click.group(cls=NaturalOrderGroup)
@click.version_option(version=dickephase_tool_version, prog_name=dickephase_tool_name)
def dickephase_cli():
    pass


dickephase_cli.add_command(commands.calibrate)
dickephase_cli.add_command(commands.trace)
dickephase_cli.add_command(commands.classify)
dickephase_cli.add_command(commands.boundary)
dickephase_cli.add_command(commands.sweep)
dickephase_cli.add_command(commands.render_map)
dickephase_cli.add_command(commands.quantum_run)
dickephase_cli.add_command(commands.compare)


if __name__ == "__main__":
    dickephase_cli()
