"""Coset listing and decomposition ranking."""

from functools import partial
from typing import Optional

import typer
from rich.console import Console

from pfcft.commands.tables import Mode, smallest_degree
from pfcft.context import get_context
from pfcft.engine import rank_decompositions
from pfcft.errors import PfcftError
from pfcft.field import MAX_DEGREE, MIN_DEGREE
from pfcft.reference import cfft_reference_report, load_reference
from pfcft.structure import cyclotomic_cosets, format_decomposition
from pfcft.utils.display import display_error, display_info, display_table

app = typer.Typer(help="Cosets and coprime decompositions")
console = Console()


@app.command()
def cosets(n: int = typer.Option(..., "--n", "-n", help="Odd modulus")):
    """List the cyclotomic cosets of Z_n under doubling."""
    try:
        found = cyclotomic_cosets(n)
    except PfcftError as e:
        display_error(str(e))
        raise typer.Exit(1)

    display_table(
        f"Cyclotomic cosets mod {n}",
        ["rep", "size", "elements"],
        [[c.representative, c.size, " ".join(str(e) for e in c.elements)] for c in found],
    )
    display_info(f"{len(found)} cosets")


@app.command()
def decompose(
    n: int = typer.Option(..., "--n", "-n", help="Transform length"),
    l: Optional[int] = typer.Option(
        None, "--l", "-l", help="Field degree (default: smallest l with n | 2^l - 1)"
    ),
    mode: Mode = typer.Option(
        Mode.achieved, "--mode", "-m", help="achieved: optimized sub-plans; formula: reference"
    ),
):
    """Rank the coprime decompositions of n by total complexity."""
    ctx = get_context()
    if l is None:
        l = smallest_degree(n)
        if l is None:
            display_error(f"{n} divides no 2^l - 1 with {MIN_DEGREE} <= l <= {MAX_DEGREE}")
            raise typer.Exit(1)
    field = ctx.field(l)

    if mode is Mode.formula:
        report_for = partial(cfft_reference_report, l=l)
    else:
        report_for = partial(ctx.plans.report, field)
    try:
        ranked = rank_decompositions(field, n, ctx.max_factor, ctx.cse, report_for)
    except PfcftError as e:
        display_error(str(e))
        raise typer.Exit(1)
    if not ranked:
        display_error(f"No decomposition of {n} with factors <= {ctx.max_factor}")
        raise typer.Exit(1)

    display_table(
        f"Decompositions of {n} over {field.describe()} ({mode.value})",
        ["factors", "mult", "add", "total"],
        [
            [" x ".join(str(f) for f in factors), r.mult, r.add, r.total]
            for factors, r in ranked
        ],
    )
    best, report = ranked[0]
    display_info(f"Best: {format_decomposition(n, best)} with total {report.total}")

    direct = next(
        (row for row in load_reference().comparison_rows(n) if row.method == "dcfft"), None
    )
    if direct is not None:
        display_info(f"Direct cyclotomic FFT (published): total {direct.total}")
