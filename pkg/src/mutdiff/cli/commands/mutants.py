from pathlib import Path

import click

from mutdiff.cli.params import OPERATORS, load_program
from mutdiff.services.mutation.engine import generate_mutants, mutant_records
from mutdiff.utils.serialization import dumps


@click.command("mutants")
@click.argument("file", type=click.Path(path_type=Path))
@click.option("--ops", type=OPERATORS, help="Operator classes, e.g. AOR,ROR,VRP")
def mutants_command(file: Path, ops):
    """List the mutants of FILE as JSON."""
    program = load_program(file)
    records = mutant_records(generate_mutants(program, ops))
    click.echo(dumps(records).decode(), nl=False)
