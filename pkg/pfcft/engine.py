"""Prime-factor composition of cyclotomic FFTs via Good-Thomas maps."""

import math
import threading
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Optional

import numpy as np

from pfcft.cfft import (
    CfftPlan,
    ComplexityReport,
    build_cfft,
    cfft_complexity,
    exec_cfft,
    optimize_cfft,
)
from pfcft.errors import PlanError, StructureError
from pfcft.field import FieldCtx
from pfcft.structure import (
    DEFAULT_MAX_FACTOR,
    GoodThomasMap,
    check_coprime,
    coprime_decompositions,
    good_thomas_map,
)
from pfcft.utils.config import CseConfig

# (axis, sub-plan, columns of shape (N_i, batch)) -> transformed columns
SubTransform = Callable[[int, CfftPlan, np.ndarray], np.ndarray]
ReportSource = Callable[[int], ComplexityReport]


class PlanCache:
    """Optimized CFFT plans keyed by (field, length), built once."""

    def __init__(self, cfg: Optional[CseConfig] = None):
        self.cfg = cfg or CseConfig()
        self._plans: dict[tuple[FieldCtx, int], CfftPlan] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._plans)

    def get(self, ctx: FieldCtx, n: int) -> CfftPlan:
        """Optimized plan for n points over ctx, built on first use."""
        key = (ctx, n)
        with self._lock:
            plan = self._plans.get(key)
        if plan is None:
            plan = optimize_cfft(build_cfft(ctx, n), None, self.cfg)
            with self._lock:
                plan = self._plans.setdefault(key, plan)
        return plan

    def report(self, ctx: FieldCtx, n: int) -> ComplexityReport:
        """ComplexityReport of get(ctx, n)."""
        return cfft_complexity(self.get(ctx, n))


@dataclass(frozen=True, eq=False)
class PfcftPlan:
    """N-point transform from one CFFT per coprime factor."""

    n: int
    ctx: FieldCtx
    factors: tuple[int, ...]
    map: GoodThomasMap
    sub_plans: tuple[CfftPlan, ...]
    report: ComplexityReport


def pfcft_complexity(
    factors: Sequence[int], sub_reports: Sequence[ComplexityReport], l: int
) -> ComplexityReport:
    """Each N_i-point transform runs N / N_i times."""
    factors = tuple(factors)
    check_coprime(factors)
    if len(sub_reports) != len(factors):
        raise PlanError(f"{len(sub_reports)} reports for {len(factors)} factors")
    n = math.prod(factors)
    mult = sum((n // f) * r.mult for f, r in zip(factors, sub_reports))
    add = sum((n // f) * r.add for f, r in zip(factors, sub_reports))
    return ComplexityReport.from_counts(mult, add, l)


def validate_factors(ctx: FieldCtx, n: int, factors: Sequence[int]) -> tuple[int, ...]:
    """Check factors against n and the field, as a tuple."""
    factors = tuple(int(f) for f in factors)
    if n < 1 or ctx.order % n:
        raise PlanError(f"{n} does not divide 2^{ctx.l} - 1 = {ctx.order}")
    if math.prod(factors) != n:
        raise PlanError(f"factors {factors} do not multiply to {n}")
    if len(factors) > 1 and min(factors) < 2:
        raise PlanError(f"factors must be at least 2: {factors}")
    try:
        check_coprime(factors)
    except StructureError as e:
        raise PlanError(str(e)) from e
    return factors


def build_pfcft(
    ctx: FieldCtx,
    n: int,
    factors: Sequence[int],
    cfg: Optional[CseConfig] = None,
    cache: Optional[PlanCache] = None,
) -> PfcftPlan:
    """Plan with one shared, optimized sub-plan per factor.

    factors = (n,) gives a single CFFT.
    """
    factors = validate_factors(ctx, n, factors)
    cache = cache or PlanCache(cfg)
    sub_plans = tuple(cache.get(ctx, f) for f in factors)
    report = pfcft_complexity(factors, [cfft_complexity(p) for p in sub_plans], ctx.l)
    return PfcftPlan(n, ctx, factors, good_thomas_map(factors), sub_plans, report)


def _cfft_columns(axis: int, plan: CfftPlan, columns: np.ndarray) -> np.ndarray:
    return exec_cfft(plan, columns)


def exec_pfcft(
    plan: PfcftPlan,
    f,
    threads: int = 1,
    sub_transform: Optional[SubTransform] = None,
) -> np.ndarray:
    """Row-column evaluation over the Good-Thomas array.

    Axes are transformed in factor order; within an axis the independent
    columns may be split across threads. f may carry trailing batch axes.
    """
    f = np.asarray(f, dtype=np.int64)
    if f.ndim == 0 or f.shape[0] != plan.n:
        raise PlanError(
            f"input of length {f.shape[0] if f.ndim else 0} for a {plan.n}-point plan"
        )
    transform = sub_transform or _cfft_columns
    batch = f.shape[1:]
    x = f[plan.map.input_index]

    for axis, sub_plan in enumerate(plan.sub_plans):
        moved = np.moveaxis(x, axis, 0)
        shape = moved.shape
        columns = moved.reshape(shape[0], -1)
        if threads > 1 and columns.shape[1] > 1:
            chunks = np.array_split(np.arange(columns.shape[1]), threads)
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(
                    pool.map(
                        lambda idx: transform(axis, sub_plan, columns[:, idx]),
                        [c for c in chunks if c.size],
                    )
                )
            result = np.concatenate(parts, axis=1)
        else:
            result = transform(axis, sub_plan, columns)
        x = np.moveaxis(result.reshape(shape), 0, axis)

    out = np.zeros((plan.n,) + batch, dtype=np.int64)
    out[plan.map.output_index] = x
    return out


def rank_decompositions(
    ctx: FieldCtx,
    n: int,
    max_factor: int = DEFAULT_MAX_FACTOR,
    cfg: Optional[CseConfig] = None,
    report_for: Optional[ReportSource] = None,
) -> list[tuple[tuple[int, ...], ComplexityReport]]:
    """Every candidate decomposition with its report, cheapest first.

    Sub-reports come from report_for (e.g. reference tables) or, by default,
    from optimized plans built here. Ties go to fewer factors, then to the
    lexicographically smaller factor list.
    """
    if n < 1 or ctx.order % n:
        raise PlanError(f"{n} does not divide 2^{ctx.l} - 1 = {ctx.order}")
    if n == 1:
        candidates = [(1,)]
    else:
        candidates = coprime_decompositions(n, max_factor)
    if report_for is None:
        report_for = partial(PlanCache(cfg).report, ctx)

    reports: dict[int, ComplexityReport] = {}
    ranked = []
    for factors in candidates:
        for f in factors:
            if f not in reports:
                reports[f] = report_for(f)
        report = pfcft_complexity(factors, [reports[f] for f in factors], ctx.l)
        ranked.append((factors, report))
    ranked.sort(key=lambda item: (item[1].total, len(item[0]), item[0]))
    return ranked


def best_decomposition(
    ctx: FieldCtx,
    n: int,
    max_factor: int = DEFAULT_MAX_FACTOR,
    cfg: Optional[CseConfig] = None,
    report_for: Optional[ReportSource] = None,
) -> tuple[tuple[int, ...], ComplexityReport]:
    """Cheapest entry of rank_decompositions."""
    ranked = rank_decompositions(ctx, n, max_factor, cfg, report_for)
    if not ranked:
        raise PlanError(f"no decomposition of {n} with factors <= {max_factor}")
    return ranked[0]
