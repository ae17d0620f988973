"""Cyclotomic FFT plans in the bilinear form F = A Q (c * P f').

f' is f permuted into cyclotomic-coset order. Each coset block of size m
is a cyclic convolution of f'_i with the normal-basis vector
b_i = (g, g^(2^(m-1)), ..., g^2), computed by a bilinear algorithm whose
constant side c_i = R_i b_i is precomputed. A maps the block outputs back to
the DFT and is binary.
"""

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from pfcft.convolution import BilinearConvAlgorithm, bilinear_algorithm
from pfcft.cse import check_program, cse_reduce, cse_reduce_blockdiag
from pfcft.errors import PlanError, ProgramError
from pfcft.field import FieldCtx
from pfcft.linear import (
    AdditionProgram,
    BinaryMatrix,
    apply_matrix,
    field_invert,
    field_matmul,
    naive_compile,
    run_program,
    stack_programs,
)
from pfcft.structure import (
    CyclotomicCoset,
    conjugates,
    coset_permutation,
    cyclotomic_cosets,
    normal_basis_generator,
)
from pfcft.utils.config import CseConfig

SCHEMES = (1, 2)

# Above this length the structural identity is checked on sampled rows.
EXHAUSTIVE_CHECK_LIMIT = 255


class ComplexityReport(BaseModel):
    """Operation counts; total weights a multiplication as 2l - 1 additions."""

    model_config = ConfigDict(frozen=True)

    mult: int = Field(ge=0)
    add: int = Field(ge=0)
    total: int = Field(ge=0)
    l: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_total(self) -> "ComplexityReport":
        expected = (2 * self.l - 1) * self.mult + self.add
        if self.total != expected:
            raise ValueError(
                f"total {self.total} != (2*{self.l}-1)*{self.mult} + {self.add}"
            )
        return self

    @classmethod
    def from_counts(cls, mult: int, add: int, l: int) -> "ComplexityReport":
        """Report with total = (2l - 1) mult + add."""
        return cls(mult=mult, add=add, total=(2 * l - 1) * mult + add, l=l)


@dataclass(frozen=True, eq=False)
class ConvBlock:
    """One coset's cyclic convolution."""

    coset: CyclotomicCoset
    gamma: int
    basis: tuple[int, ...]
    algorithm: BilinearConvAlgorithm
    constants: tuple[int, ...]

    @property
    def size(self) -> int:
        """Coset size m."""
        return self.coset.size

    def circulant(self) -> np.ndarray:
        """L[t][j] = b[(t - j) mod m], so L f' = b (*) f'."""
        m = self.size
        idx = (np.arange(m)[:, None] - np.arange(m)[None, :]) % m
        return np.asarray(self.basis, dtype=np.int64)[idx]


@dataclass(frozen=True, eq=False)
class CfftPlan:
    """Executable N-point cyclotomic FFT.

    post holds the programs after the products: (AQ,) for scheme 1 or
    (Q, A) for scheme 2, applied in order.
    """

    n: int
    ctx: FieldCtx
    alpha: int
    cosets: tuple[CyclotomicCoset, ...]
    pi: tuple[int, ...]
    blocks: tuple[ConvBlock, ...]
    constants: np.ndarray
    A: BinaryMatrix
    scheme: int
    pre: AdditionProgram
    post: tuple[AdditionProgram, ...]
    optimized: bool = False
    scheme_adds: dict[int, int] = field(default_factory=dict)

    @property
    def P(self) -> BinaryMatrix:
        return BinaryMatrix.block_diag([b.algorithm.P for b in self.blocks])

    @property
    def Q(self) -> BinaryMatrix:
        return BinaryMatrix.block_diag([b.algorithm.Q for b in self.blocks])

    @property
    def R(self) -> BinaryMatrix:
        return BinaryMatrix.block_diag([b.algorithm.R for b in self.blocks])

    @property
    def mult_count(self) -> int:
        """General multiplications per transform."""
        return int(np.count_nonzero(self.constants != 1))

    @property
    def add_count(self) -> int:
        """Additions of the pre and post programs."""
        return self.pre.add_count + sum(p.add_count for p in self.post)

    def post_matrices(self, scheme: Optional[int] = None) -> list[BinaryMatrix]:
        """Binary matrices the post programs compute under a scheme."""
        scheme = self.scheme if scheme is None else scheme
        if scheme == 1:
            return [self.A @ self.Q]
        return [self.Q, self.A]


def _dft_matrix(ctx: FieldCtx, n: int) -> np.ndarray:
    """V[k][n] = alpha^(n k) for the order-n root alpha."""
    idx = np.arange(n)
    step = ctx.order // n
    return ctx.exp_table[((np.outer(idx, idx) % n) * step) % ctx.order]


def _make_block(ctx: FieldCtx, coset: CyclotomicCoset) -> ConvBlock:
    m = coset.size
    gamma = normal_basis_generator(ctx, m)
    conj = conjugates(ctx, gamma, m)
    basis = tuple(conj[(-s) % m] for s in range(m))
    algorithm = bilinear_algorithm(m)
    constants = apply_matrix(algorithm.R, np.asarray(basis, dtype=np.int64))
    return ConvBlock(coset, gamma, basis, algorithm, tuple(int(c) for c in constants))


def build_cfft(ctx: FieldCtx, n: int) -> CfftPlan:
    """Unoptimized plan: A = V Pi^T L^-1 and naively compiled programs."""
    if n < 1 or ctx.order % n:
        raise PlanError(f"{n} does not divide 2^{ctx.l} - 1 = {ctx.order}")
    cosets = tuple(cyclotomic_cosets(n))
    if max(c.size for c in cosets) > 12:
        raise PlanError(f"coset of size above 12 for N={n}")
    pi = tuple(coset_permutation(cosets))
    blocks = tuple(_make_block(ctx, coset) for coset in cosets)

    dft = _dft_matrix(ctx, n)
    columns = []
    offset = 0
    for block in blocks:
        cols = list(pi[offset : offset + block.size])
        inverse = field_invert(ctx, block.circulant())
        columns.append(field_matmul(ctx, dft[:, cols], inverse))
        offset += block.size
    a = np.hstack(columns)
    if not np.all((a == 0) | (a == 1)):
        raise PlanError(f"A is not binary for N={n} over {ctx.describe()}")

    constants = np.concatenate([np.asarray(b.constants, dtype=np.int64) for b in blocks])
    constants.flags.writeable = False
    plan = CfftPlan(
        n=n,
        ctx=ctx,
        alpha=ctx.nth_root(n),
        cosets=cosets,
        pi=pi,
        blocks=blocks,
        constants=constants,
        A=BinaryMatrix(a),
        scheme=1,
        pre=stack_programs([naive_compile(b.algorithm.P) for b in blocks]),
        post=(),
    )
    return replace(plan, post=(naive_compile(plan.A @ plan.Q),))


def _scheme_programs(
    plan: CfftPlan, scheme: int, cfg: CseConfig
) -> tuple[AdditionProgram, ...]:
    if scheme == 1:
        return (cse_reduce(plan.A @ plan.Q, cfg),)
    q_program = cse_reduce_blockdiag([b.algorithm.Q for b in plan.blocks], cfg)
    return q_program, cse_reduce(plan.A, cfg)


def optimize_cfft(
    plan: CfftPlan, scheme: Optional[int] = None, cfg: Optional[CseConfig] = None
) -> CfftPlan:
    """Reduce the additive stages with CSE.

    scheme 1 reduces AQ jointly, scheme 2 reduces Q (block-wise) and A
    separately. With scheme=None both run and the smaller count is kept,
    scheme 1 on ties. P is always reduced block-wise.
    """
    cfg = cfg or CseConfig()
    if scheme is not None and scheme not in SCHEMES:
        raise PlanError(f"unknown scheme {scheme}")

    pre = cse_reduce_blockdiag([b.algorithm.P for b in plan.blocks], cfg)
    schemes = SCHEMES if scheme is None else (scheme,)
    candidates = {s: _scheme_programs(plan, s, cfg) for s in schemes}
    scheme_adds = {
        s: pre.add_count + sum(p.add_count for p in programs)
        for s, programs in candidates.items()
    }
    chosen = min(candidates, key=lambda s: (scheme_adds[s], s))
    optimized = replace(
        plan,
        scheme=chosen,
        pre=pre,
        post=candidates[chosen],
        optimized=True,
        scheme_adds=scheme_adds,
    )
    check_programs(optimized)
    return optimized


def check_programs(plan: CfftPlan) -> None:
    """Raise ProgramError unless every stage program computes its matrix."""
    check_program(plan.pre, plan.P)
    matrices = plan.post_matrices()
    if len(matrices) != len(plan.post):
        raise ProgramError(f"scheme {plan.scheme} needs {len(matrices)} post programs")
    for program, matrix in zip(plan.post, matrices):
        check_program(program, matrix)


def exec_cfft(plan: CfftPlan, f) -> np.ndarray:
    """F = A Q (c * P f'); f may carry trailing batch axes."""
    f = np.asarray(f, dtype=np.int64)
    if f.ndim == 0 or f.shape[0] != plan.n:
        raise PlanError(
            f"input of length {f.shape[0] if f.ndim else 0} for a {plan.n}-point plan"
        )
    values = run_program(plan.pre, f[list(plan.pi)])
    constants = plan.constants.reshape(plan.constants.shape + (1,) * (f.ndim - 1))
    values = plan.ctx.mul_vec(constants, values)
    for program in plan.post:
        values = run_program(program, values)
    return values


def cfft_complexity(plan: CfftPlan) -> ComplexityReport:
    """ComplexityReport of an optimized plan."""
    return ComplexityReport.from_counts(plan.mult_count, plan.add_count, plan.ctx.l)


def check_structure(plan: CfftPlan, sample_rows: Optional[int] = None, seed: int = 0) -> None:
    """Verify A L Pi = V entrywise, or on `sample_rows` random rows.

    All rows are checked when sample_rows is None and N <= 255.
    """
    dft = _dft_matrix(plan.ctx, plan.n)
    if sample_rows is None and plan.n <= EXHAUSTIVE_CHECK_LIMIT:
        rows = np.arange(plan.n)
    else:
        rng = np.random.default_rng(seed)
        rows = rng.choice(plan.n, size=min(sample_rows or 16, plan.n), replace=False)
    a = plan.A.bits[rows].astype(np.int64)
    offset = 0
    for block in plan.blocks:
        cols = list(plan.pi[offset : offset + block.size])
        product = field_matmul(plan.ctx, a[:, offset : offset + block.size], block.circulant())
        if not np.array_equal(product, dft[np.ix_(rows, cols)]):
            raise PlanError(
                f"A L Pi differs from the DFT matrix in coset {block.coset.representative}"
            )
        offset += block.size
