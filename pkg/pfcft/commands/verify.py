"""Oracle verification of transform plans."""

from pathlib import Path
from typing import Optional

import numpy as np
import typer
from rich.console import Console
from rich.progress import track

from pfcft.commands.plan import parse_factors, resolve_plan
from pfcft.context import get_context
from pfcft.engine import PfcftPlan, exec_pfcft
from pfcft.errors import PfcftError
from pfcft.oracle import naive_dft
from pfcft.plan_io import read_plan
from pfcft.structure import format_decomposition
from pfcft.utils.display import display_error, display_info, display_success

app = typer.Typer(help="Verify plans against the naive DFT")
console = Console()

# Inputs up to this length are also checked on every standard basis vector.
BASIS_CHECK_LIMIT = 63


def random_vectors(plan: PfcftPlan, trials: int, seed: int) -> np.ndarray:
    """Random vectors (columns), plus the standard basis for short lengths."""
    rng = np.random.default_rng(seed)
    columns = [rng.integers(0, plan.ctx.size, size=(plan.n, trials), dtype=np.int64)]
    if plan.n <= BASIS_CHECK_LIMIT:
        columns.append(np.eye(plan.n, dtype=np.int64))
    return np.hstack(columns)


def count_mismatches(plan: PfcftPlan, vectors: np.ndarray, threads: int = 1) -> int:
    """Columns where the plan disagrees with the naive DFT."""
    fast = exec_pfcft(plan, vectors, threads=threads)
    alpha = plan.ctx.nth_root(plan.n)
    failures = 0
    for j in track(range(vectors.shape[1]), description="Checking", transient=True):
        expected = naive_dft(plan.ctx, alpha, vectors[:, j])
        if not np.array_equal(fast[:, j], np.asarray(expected, dtype=np.int64)):
            failures += 1
    return failures


@app.command()
def verify(
    n: Optional[int] = typer.Option(None, "--n", "-n", help="Transform length"),
    l: Optional[int] = typer.Option(None, "--l", "-l", help="Field extension degree"),
    factors: Optional[str] = typer.Option(
        None, "--factors", "-f", help="Comma-separated coprime factors"
    ),
    trials: int = typer.Option(20, "--trials", "-t", min=1, help="Random vectors"),
    plan_file: Optional[Path] = typer.Option(
        None, "--plan", help="Verify this plan file instead of building one"
    ),
):
    """Compare a plan with the naive DFT on random and basis vectors."""
    ctx = get_context()

    if plan_file is not None:
        try:
            plan = read_plan(plan_file)
        except PfcftError as e:
            display_error(f"Invalid plan {plan_file}: {e}")
            raise typer.Exit(1)
    elif n is None or l is None:
        display_error("Give --n and --l, or --plan")
        raise typer.Exit(1)
    else:
        plan = resolve_plan(ctx, n, l, parse_factors(factors))

    vectors = random_vectors(plan, trials, ctx.cse.seed)
    if vectors.shape[1] == 0:
        display_error("No vectors to check; give --trials 1 or more")
        raise typer.Exit(1)
    display_info(
        f"Checking {format_decomposition(plan.n, plan.factors)} over "
        f"{plan.ctx.describe()} on {vectors.shape[1]} vectors"
    )
    failures = count_mismatches(plan, vectors, ctx.threads)
    if failures:
        display_error(f"{failures} of {vectors.shape[1]} vectors disagree with the naive DFT")
        raise typer.Exit(1)
    display_success(f"All {vectors.shape[1]} vectors match the naive DFT")
