"""Plan construction and execution commands."""

from functools import partial
from pathlib import Path
from typing import Optional

import numpy as np
import typer
from rich.console import Console

from pfcft.cfft import ComplexityReport
from pfcft.context import RunContext, get_context
from pfcft.engine import PfcftPlan, best_decomposition, build_pfcft, exec_pfcft
from pfcft.errors import PfcftError
from pfcft.plan_io import format_vector, read_plan, read_vector, write_plan
from pfcft.structure import format_decomposition
from pfcft.utils.display import (
    display_error,
    display_info,
    display_success,
    display_table,
)

app = typer.Typer(help="Plan construction and execution")
console = Console()


def parse_factors(text: Optional[str]) -> Optional[tuple[int, ...]]:
    """'3,85' or '3x85' -> (3, 85)."""
    if text is None:
        return None
    tokens = [tok for tok in text.replace("x", ",").split(",") if tok.strip()]
    try:
        factors = tuple(int(tok) for tok in tokens)
    except ValueError:
        display_error(f"Invalid factor list: {text!r}")
        raise typer.Exit(1)
    if not factors:
        display_error("Empty factor list")
        raise typer.Exit(1)
    return factors


def resolve_plan(
    ctx: RunContext, n: int, l: int, factors: Optional[tuple[int, ...]]
) -> PfcftPlan:
    """Build the plan for n points over GF(2^l), choosing factors if not given."""
    field = ctx.field(l)
    try:
        if factors is None:
            factors, _ = best_decomposition(
                field, n, ctx.max_factor, ctx.cse, partial(ctx.plans.report, field)
            )
            display_info(f"Using decomposition {format_decomposition(n, factors)}")
        return build_pfcft(field, n, factors, ctx.cse, cache=ctx.plans)
    except PfcftError as e:
        display_error(str(e))
        raise typer.Exit(1)


def display_report(title: str, report: ComplexityReport) -> None:
    """Show mult, add and total as a one-row table."""
    display_table(
        title,
        ["", "mult", "add", "total"],
        [["count", report.mult, report.add, report.total]],
    )


@app.command()
def plan(
    n: int = typer.Option(..., "--n", "-n", help="Transform length, dividing 2^l - 1"),
    l: int = typer.Option(..., "--l", "-l", help="Field extension degree (4-12)"),
    factors: Optional[str] = typer.Option(
        None, "--factors", "-f", help="Comma-separated coprime factors"
    ),
    output: Optional[Path] = typer.Option(
        None, "--output", "-o", help="Plan file (default: pfcft_<n>_l<l>.plan)"
    ),
):
    """Build and optimize a transform plan and write it to a file."""
    ctx = get_context()
    built = resolve_plan(ctx, n, l, parse_factors(factors))

    path = output or Path(f"pfcft_{n}_l{l}.plan")
    try:
        write_plan(built, path)
    except OSError as e:
        display_error(f"Cannot write {path}: {e}")
        raise typer.Exit(1)

    for sub in built.sub_plans:
        console.print(
            f"  {sub.n}-point CFFT: scheme {sub.scheme}, "
            f"mult {sub.mult_count}, add {sub.add_count}"
        )
    display_report(format_decomposition(n, built.factors), built.report)
    display_success(f"Plan written to {path}")


@app.command()
def transform(
    plan_file: Path = typer.Argument(..., help="Plan file written by 'pfcft plan'"),
    input_file: Path = typer.Argument(..., help="Input vector, one hex element per line"),
    output: Optional[Path] = typer.Option(
        None, "--output", "-o", help="Write the result here instead of stdout"
    ),
):
    """Apply a plan to an input vector."""
    ctx = get_context()
    try:
        loaded = read_plan(plan_file)
        f = read_vector(input_file, loaded.ctx)
    except (PfcftError, OSError) as e:
        display_error(str(e))
        raise typer.Exit(1)
    if len(f) != loaded.n:
        display_error(f"Input has {len(f)} elements, plan expects {loaded.n}")
        raise typer.Exit(1)

    result = exec_pfcft(loaded, np.asarray(f, dtype=np.int64), threads=ctx.threads)
    text = format_vector(result)
    if output:
        output.write_text(text)
        display_success(f"Output written to {output}")
    else:
        console.print(text, end="", markup=False, highlight=False)
