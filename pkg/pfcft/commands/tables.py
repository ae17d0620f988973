"""Reproduction of the published operation-count tables."""

from enum import Enum
from functools import partial
from typing import NamedTuple, Optional

import typer
from pydantic import BaseModel, ConfigDict, model_validator
from rich.console import Console

from pfcft.cfft import ComplexityReport
from pfcft.context import get_context
from pfcft.convolution import bilinear_algorithm
from pfcft.cse import cse_reduce
from pfcft.engine import PlanCache, ReportSource, pfcft_complexity
from pfcft.errors import PfcftError
from pfcft.field import MAX_DEGREE, MIN_DEGREE, make_field
from pfcft.reference import PfcftReference, cfft_reference_report, load_reference
from pfcft.structure import DEFAULT_MAX_FACTOR, coprime_decompositions
from pfcft.utils.config import CseConfig
from pfcft.utils.display import display_error, display_table

app = typer.Typer(help="Reproduce the operation-count tables")
console = Console()


class Mode(str, Enum):
    formula = "formula"
    achieved = "achieved"


class TableRow(BaseModel):
    """One labelled (mult, add, total) row at a field degree l."""

    model_config = ConfigDict(frozen=True)

    label: str
    mult: int
    add: int
    total: int
    l: int

    @model_validator(mode="after")
    def _check_total(self) -> "TableRow":
        if self.total != (2 * self.l - 1) * self.mult + self.add:
            raise ValueError(f"row {self.label}: total does not match (2l-1)*mult + add")
        return self

    @classmethod
    def from_report(cls, label: str, report: ComplexityReport) -> "TableRow":
        """Row from a ComplexityReport."""
        return cls(label=label, mult=report.mult, add=report.add, total=report.total, l=report.l)


class DecompositionRow(NamedTuple):
    length: int
    factors: tuple[int, ...]
    row: TableRow
    printed: Optional[PfcftReference]

    @property
    def matches_printed(self) -> bool:
        """True when the printed row exists and has the same counts."""
        return self.printed is not None and (
            (self.row.mult, self.row.add, self.row.total)
            == (self.printed.mult, self.printed.add, self.printed.total)
        )


def smallest_degree(n: int, l_min: int = MIN_DEGREE, l_max: int = MAX_DEGREE) -> Optional[int]:
    """Smallest l in [l_min, l_max] with n | 2^l - 1."""
    return next((l for l in range(l_min, l_max + 1) if ((1 << l) - 1) % n == 0), None)


def decomposition_label(factors: tuple[int, ...]) -> str:
    """(3, 85) -> '3 x 85'."""
    return " x ".join(str(f) for f in factors)


def _printed_row(length: int, factors: tuple[int, ...]) -> Optional[PfcftReference]:
    return next(
        (
            row
            for row in load_reference().pfcft_rows(length)
            if tuple(sorted(row.factors)) == factors
        ),
        None,
    )


def decomposition_rows(
    l: int, report_for: ReportSource, max_factor: int = DEFAULT_MAX_FACTOR
) -> list[DecompositionRow]:
    """Every multi-factor decomposition of 2^l - 1 with its composed counts."""
    n = (1 << l) - 1
    rows = []
    for factors in coprime_decompositions(n, max_factor):
        if len(factors) < 2:
            continue
        report = pfcft_complexity(factors, [report_for(f) for f in factors], l)
        rows.append(
            DecompositionRow(
                n,
                factors,
                TableRow.from_report(decomposition_label(factors), report),
                _printed_row(n, factors),
            )
        )
    return rows


def formula_rows(l_min: int = MIN_DEGREE, l_max: int = MAX_DEGREE) -> list[DecompositionRow]:
    """Prime-factor rows composed from the shipped CFFT reference counts."""
    rows = []
    for l in range(l_min, l_max + 1):
        rows += decomposition_rows(l, partial(cfft_reference_report, l=l))
    return rows


def achieved_rows(
    l_min: int = MIN_DEGREE, l_max: int = MAX_DEGREE, cfg: Optional[CseConfig] = None
) -> list[DecompositionRow]:
    """Prime-factor rows composed from plans optimized by this build."""
    cache = PlanCache(cfg)
    rows = []
    for l in range(l_min, l_max + 1):
        rows += decomposition_rows(l, partial(cache.report, make_field(l)))
    return rows


def _conv_table(mode: Mode, cfg: CseConfig) -> None:
    reference = load_reference()
    rows = []
    for ref in reference.conv:
        alg = bilinear_algorithm(ref.length)
        row = [ref.length, ref.mult, alg.nontrivial_mults, alg.mult_count, ref.add_q, ref.add_p]
        if mode is Mode.achieved:
            add_q = cse_reduce(alg.Q, cfg).add_count
            add_p = cse_reduce(alg.P, cfg).add_count
            row += [add_q, add_p, f"{add_q + add_p - ref.add:+d}"]
        rows.append(row)
    columns = ["L", "mult", "mult (ours)", "t", "C(Q)", "C(P)"]
    if mode is Mode.achieved:
        columns += ["C(Q) ours", "C(P) ours", "Δadd"]
    display_table("Short cyclic convolutions", columns, rows)


def _cfft_table(mode: Mode, l_min: int, l_max: int, cfg: CseConfig) -> None:
    cache = PlanCache(cfg)
    rows = []
    for ref in load_reference().cfft:
        l = smallest_degree(ref.length, l_min, l_max)
        if l is None:
            continue
        row = [ref.length, l, ref.mult, ref.add_scheme1, ref.add_scheme2]
        if mode is Mode.achieved:
            plan = cache.get(make_field(l), ref.length)
            row += [
                plan.mult_count,
                plan.scheme_adds.get(1, ""),
                plan.scheme_adds.get(2, ""),
                f"{plan.add_count - ref.add:+d}",
            ]
        rows.append(row)
    columns = ["N", "l", "mult", "add (1)", "add (2)"]
    if mode is Mode.achieved:
        columns += ["mult ours", "add (1) ours", "add (2) ours", "Δadd"]
    display_table("Cyclotomic FFTs", columns, rows)


def _pfcft_table(mode: Mode, l_min: int, l_max: int, cfg: CseConfig) -> None:
    formula = formula_rows(l_min, l_max)
    if mode is Mode.formula:
        rows = [
            [
                r.length,
                r.row.label,
                r.row.mult,
                r.row.add,
                r.row.total,
                "yes" if r.matches_printed else "no",
                (r.printed.note if r.printed else None) or "",
            ]
            for r in formula
        ]
        columns = ["N", "factors", "mult", "add", "total", "as printed", "note"]
    else:
        baseline = {(r.length, r.factors): r.row for r in formula}
        rows = []
        for r in achieved_rows(l_min, l_max, cfg):
            ref = baseline[(r.length, r.factors)]
            rows.append(
                [
                    r.length,
                    r.row.label,
                    r.row.mult,
                    r.row.add,
                    r.row.total,
                    f"{r.row.add - ref.add:+d}",
                    f"{r.row.total - ref.total:+d}",
                ]
            )
        columns = ["N", "factors", "mult", "add", "total", "Δadd", "Δtotal"]
    display_table("Prime-factor cyclotomic FFTs", columns, rows)


def _comparison_table(l_min: int, l_max: int) -> None:
    reference = load_reference()
    rows = []
    for l in range(l_min, l_max + 1):
        for row in reference.comparison_rows((1 << l) - 1):
            rows.append([row.length, row.method, row.mult, row.add, row.total, row.note or ""])
    if rows:
        display_table(
            "Comparison with other methods",
            ["N", "method", "mult", "add", "total", "note"],
            rows,
        )


@app.command()
def tables(
    l_min: int = typer.Option(MIN_DEGREE, "--l-min", help="Smallest field degree"),
    l_max: int = typer.Option(MAX_DEGREE, "--l-max", help="Largest field degree"),
    mode: Mode = typer.Option(
        Mode.formula, "--mode", "-m", help="formula: reference counts; achieved: this build"
    ),
):
    """Print the convolution, CFFT and prime-factor complexity tables."""
    ctx = get_context()
    if not MIN_DEGREE <= l_min <= l_max <= MAX_DEGREE:
        display_error(f"Need {MIN_DEGREE} <= --l-min <= --l-max <= {MAX_DEGREE}")
        raise typer.Exit(1)

    try:
        _conv_table(mode, ctx.cse)
        _cfft_table(mode, l_min, l_max, ctx.cse)
        _pfcft_table(mode, l_min, l_max, ctx.cse)
        if mode is Mode.formula:
            _comparison_table(l_min, l_max)
    except PfcftError as e:
        display_error(str(e))
        raise typer.Exit(1)
