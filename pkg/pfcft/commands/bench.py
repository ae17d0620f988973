"""Timing of plan construction and execution."""

import time
from typing import Optional

import numpy as np
import typer
from rich.console import Console

from pfcft.commands.plan import display_report, parse_factors, resolve_plan
from pfcft.context import get_context
from pfcft.engine import exec_pfcft
from pfcft.structure import format_decomposition
from pfcft.utils.display import display_table

app = typer.Typer(help="Benchmark transform plans")
console = Console()


def time_calls(fn, repeats: int) -> list[float]:
    """Wall time of each of `repeats` calls, in seconds."""
    timings = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        timings.append(time.perf_counter() - start)
    return timings


@app.command()
def bench(
    n: int = typer.Option(..., "--n", "-n", help="Transform length"),
    l: int = typer.Option(..., "--l", "-l", help="Field extension degree"),
    factors: Optional[str] = typer.Option(
        None, "--factors", "-f", help="Comma-separated coprime factors"
    ),
    repeats: int = typer.Option(5, "--repeats", "-r", min=1, help="Timed runs"),
):
    """Time plan construction and execution, and show counted operations."""
    ctx = get_context()

    start = time.perf_counter()
    plan = resolve_plan(ctx, n, l, parse_factors(factors))
    build_seconds = time.perf_counter() - start

    rng = np.random.default_rng(ctx.cse.seed)
    f = rng.integers(0, plan.ctx.size, size=plan.n, dtype=np.int64)
    timings = time_calls(lambda: exec_pfcft(plan, f, threads=ctx.threads), repeats)

    display_table(
        f"{format_decomposition(n, plan.factors)} over {plan.ctx.describe()}",
        ["stage", "seconds"],
        [
            ["build + optimize", f"{build_seconds:.4f}"],
            ["transform (best)", f"{min(timings):.6f}"],
            ["transform (mean)", f"{sum(timings) / len(timings):.6f}"],
        ],
    )
    display_report("Counted field operations", plan.report)
