"""CLI application for pfcft."""

from importlib.metadata import version
from typing import Optional

import typer
from rich.console import Console

from pfcft.commands import bench, factor, plan, tables, verify
from pfcft.context import set_overrides

app = typer.Typer(
    name="pfcft",
    help="Prime-factor cyclotomic FFTs over GF(2^l)",
    add_completion=False,
)

console = Console()

# Plan construction and execution
app.command(name="plan")(plan.plan)
app.command(name="transform")(plan.transform)

# Checking and measurement
app.command(name="verify")(verify.verify)
app.command(name="bench")(bench.bench)
app.command(name="tables")(tables.tables)

# Structure inspection
app.command(name="cosets")(factor.cosets)
app.command(name="decompose")(factor.decompose)


def version_callback(value: bool) -> None:
    """Display version information."""
    if value:
        __version__ = version("pfcft")
        console.print(f"[bold blue]pfcft[/bold blue] version [green]{__version__}[/green]")
        raise typer.Exit()


@app.callback()
def main(
    version: bool = typer.Option(
        None,
        "--version",
        "-v",
        help="Show the version and exit.",
        callback=version_callback,
        is_eager=True,
    ),
    seed: Optional[int] = typer.Option(None, "--seed", help="CSE random seed"),
    restarts: Optional[int] = typer.Option(None, "--restarts", help="CSE restarts per matrix"),
    max_passes: Optional[int] = typer.Option(
        None, "--max-passes", help="CSE extraction passes per run (0 = unlimited)"
    ),
    max_factor: Optional[int] = typer.Option(
        None, "--max-factor", help="Largest factor considered in decompositions"
    ),
    threads: Optional[int] = typer.Option(
        None, "--threads", help="Worker threads for CSE restarts and transforms"
    ),
) -> None:
    """
    pfcft - prime-factor cyclotomic Fourier transforms over GF(2^l).

    Global options override PFCFT_* values from a .env file in the
    current directory.

    Common commands:
      pfcft plan --n 255 --l 8       - Build and save an optimized plan
      pfcft transform PLAN INPUT     - Apply a plan to a vector
      pfcft verify --n 63 --l 6      - Check a plan against the naive DFT
      pfcft tables                   - Reproduce the complexity tables
    """
    set_overrides(
        seed=seed,
        restarts=restarts,
        max_passes=max_passes,
        max_factor=max_factor,
        threads=threads,
    )


if __name__ == "__main__":
    app()
