from pathlib import Path
from typing import Optional, Tuple

import click

from mutdiff.cli.params import DOMAIN, build_domain, load_program
from mutdiff.services.conversion.encoder import pretty_print_constraints, system_to_dict
from mutdiff.services.conversion.pipeline import convert_stages
from mutdiff.services.conversion.ssa import pretty_print_ssa
from mutdiff.services.lang.printer import pretty_print
from mutdiff.services.solver.smtlib import export_smtlib
from mutdiff.utils.serialization import dumps

STAGES = ("loops", "ssa", "constraints", "smt", "json")


@click.command("convert")
@click.argument("file", type=click.Path(path_type=Path))
@click.option("--nd", type=click.IntRange(min=1), default=1, show_default=True, help="Nesting depth")
@click.option("--stage", type=click.Choice(STAGES), default="constraints", show_default=True)
@click.option("--domain", type=DOMAIN, help="Integer domain MIN:MAX")
@click.option("--paths", "show_paths", is_flag=True, help="Annotate assignments with their path conditions")
def convert_command(file: Path, nd: int, stage: str, domain: Optional[Tuple[int, int]], show_paths: bool):
    """Print FILE after loop elimination, SSA conversion or encoding."""
    program = load_program(file)
    conversion = convert_stages(program, nd, build_domain(domain))

    if stage == "loops":
        text = pretty_print(conversion.loop_free.program)
    elif stage == "ssa":
        text = pretty_print_ssa(conversion.ssa, show_paths)
    elif stage == "constraints":
        text = pretty_print_constraints(conversion.system, show_paths)
    elif stage == "smt":
        text = export_smtlib(conversion.system)
    else:
        text = dumps(system_to_dict(conversion.system)).decode()
    click.echo(text, nl=False)
