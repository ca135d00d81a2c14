import click

from mutdiff.cli.router import include_commands
from mutdiff.core.config import settings


@click.group(name=settings.PROJECT_NAME)
@click.version_option(settings.VERSION, prog_name=settings.PROJECT_NAME)
def cli():
    """Equivalent mutant detection for a small imperative language."""


include_commands(cli)


if __name__ == "__main__":
    cli()
