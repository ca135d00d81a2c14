from pathlib import Path
from typing import Dict, Optional, Tuple

import click

from mutdiff.cli.params import DOMAIN, INPUT_ASSIGNMENT, build_domain, load_program
from mutdiff.constants import EXIT_EXECUTION_ERROR
from mutdiff.exceptions import ExecutionException, InvalidInputException
from mutdiff.services.lang.interpreter import run_program
from mutdiff.utils.serialization import dumps


@click.command("run")
@click.argument("file", type=click.Path(path_type=Path))
@click.option("--input", "inputs", type=INPUT_ASSIGNMENT, default="", help="Inputs, e.g. a=1,b=2")
@click.option("--domain", type=DOMAIN, help="Integer domain MIN:MAX")
@click.option("--max-steps", type=click.IntRange(min=1), help="Interpreter step budget")
@click.option("--iterations", is_flag=True, help="Also report the iterations of every loop")
@click.pass_context
def run_command(
    ctx: click.Context,
    file: Path,
    inputs: Dict,
    domain: Optional[Tuple[int, int]],
    max_steps: Optional[int],
    iterations: bool,
):
    """Execute FILE on one input and print its outputs as JSON."""
    program = load_program(file)
    try:
        result = run_program(program, inputs, max_steps, build_domain(domain))
    except InvalidInputException as e:
        raise click.BadParameter(str(e), param_hint="--input") from e
    except ExecutionException as e:
        click.echo(f"{program.name}: {type(e).__name__}: {e}", err=True)
        ctx.exit(EXIT_EXECUTION_ERROR)

    data = {"outputs": result.outputs}
    if iterations:
        data["loop_iterations"] = {str(line): count for line, count in result.loop_iterations.items()}
    click.echo(dumps(data).decode(), nl=False)
