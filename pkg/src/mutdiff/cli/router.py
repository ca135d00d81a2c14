import click

from mutdiff.cli.commands.check import check_command
from mutdiff.cli.commands.convert import convert_command
from mutdiff.cli.commands.mutants import mutants_command
from mutdiff.cli.commands.run import run_command

COMMANDS = [check_command, mutants_command, convert_command, run_command]


def include_commands(group: click.Group) -> click.Group:
    for command in COMMANDS:
        group.add_command(command)
    return group
