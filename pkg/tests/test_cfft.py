"""Tests for cyclotomic FFT plans."""

import numpy as np
import pytest
from pydantic import ValidationError

from pfcft.cfft import (
    ComplexityReport,
    build_cfft,
    cfft_complexity,
    check_programs,
    check_structure,
    exec_cfft,
    optimize_cfft,
)
from pfcft.errors import PlanError
from pfcft.field import make_field
from pfcft.linear import naive_add_count
from pfcft.oracle import naive_dft
from pfcft.reference import load_reference


def assert_matches_oracle(plan, vectors: np.ndarray) -> None:
    out = exec_cfft(plan, vectors)
    alpha = plan.ctx.nth_root(plan.n)
    for j in range(vectors.shape[1]):
        assert out[:, j].tolist() == naive_dft(plan.ctx, alpha, vectors[:, j])


class TestComplexityReport:
    """Test suite for ComplexityReport."""

    def test_total_weights_multiplications(self):
        """Test total = (2l - 1) mult + add."""
        report = ComplexityReport.from_counts(670, 5316, 8)

        assert report.total == 15366

    def test_inconsistent_total_rejected(self):
        """Test the validator catches a wrong total."""
        with pytest.raises(ValidationError):
            ComplexityReport(mult=1, add=1, total=5, l=4)

    def test_frozen(self):
        """Test reports are immutable."""
        report = ComplexityReport.from_counts(1, 6, 4)
        with pytest.raises(ValidationError):
            report.mult = 2


class TestBuildCfft:
    """Test suite for build_cfft."""

    def test_15_point_structure(self, gf16):
        """Test cosets, permutation and block sizes for N = 15."""
        plan = build_cfft(gf16, 15)

        assert plan.pi == (0, 1, 2, 4, 8, 3, 6, 12, 9, 5, 10, 7, 14, 13, 11)
        assert [b.size for b in plan.blocks] == [1, 4, 4, 2, 4]
        assert plan.A.shape == (15, 15)
        assert plan.alpha == gf16.nth_root(15)

    @pytest.mark.parametrize(
        "l,n,mult",
        [
            (4, 3, 1),
            (4, 5, 5),
            (6, 7, 6),
            (6, 9, 11),
            (10, 11, 28),
            (12, 13, 32),
            (4, 15, 16),
            (8, 17, 38),
            (6, 63, 97),
        ],
    )
    def test_multiplication_counts(self, l, n, mult):
        """Test general multiplications per length."""
        assert build_cfft(make_field(l), n).mult_count == mult

    @pytest.mark.parametrize(
        "l,n", [(4, 15), (6, 21), (6, 63), (8, 51), (8, 85), (8, 255), (9, 73)]
    )
    def test_structural_identity(self, l, n):
        """Test A L Pi equals the DFT matrix entry by entry."""
        check_structure(build_cfft(make_field(l), n))

    @pytest.mark.parametrize("n", [row.length for row in load_reference().cfft])
    def test_structural_identity_published_lengths(self, n):
        """Test A L Pi = V for every published CFFT length at its smallest field."""
        l = next(l for l in range(4, 13) if ((1 << l) - 1) % n == 0)

        check_structure(build_cfft(make_field(l), n))

    def test_structural_identity_sampled(self):
        """Test the sampled check on a long transform."""
        check_structure(build_cfft(make_field(10), 1023), sample_rows=8, seed=1)

    def test_constants_of_free_products(self, gf64):
        """Test products with an all-ones R row have constant 1."""
        plan = build_cfft(gf64, 63)
        offset = 0
        for block in plan.blocks:
            alg = block.algorithm
            free = alg.R.row_weights() == alg.length
            assert np.all(np.asarray(block.constants)[free] == 1)
            offset += alg.mult_count
        assert offset == len(plan.constants)

    def test_length_must_divide_order(self, gf16):
        """Test N must divide 2^l - 1."""
        with pytest.raises(PlanError):
            build_cfft(gf16, 7)

    @pytest.mark.parametrize("l,n", [(4, 1), (4, 3), (4, 5), (4, 15), (6, 9), (6, 21), (8, 17)])
    def test_matches_oracle(self, rng, l, n):
        """Test the unoptimized plan equals the naive DFT."""
        ctx = make_field(l)
        plan = build_cfft(ctx, n)
        vectors = np.hstack(
            [rng.integers(0, ctx.size, size=(n, 20)), np.eye(n, dtype=np.int64)]
        )

        assert_matches_oracle(plan, vectors)

    def test_delta_gives_constant_spectrum(self, gf16):
        """Test (c, 0, ..., 0) transforms to (c, ..., c)."""
        plan = build_cfft(gf16, 15)
        f = np.zeros(15, dtype=np.int64)
        f[0] = 9

        assert exec_cfft(plan, f).tolist() == [9] * 15

    def test_wrong_input_length(self, gf16):
        """Test an input of the wrong length."""
        with pytest.raises(PlanError):
            exec_cfft(build_cfft(gf16, 15), np.zeros(5, dtype=np.int64))


class TestOptimizeCfft:
    """Test suite for optimize_cfft."""

    def test_best_scheme_kept(self, gf16, fast_cse):
        """Test both schemes run and the cheaper one is kept."""
        plan = optimize_cfft(build_cfft(gf16, 15), cfg=fast_cse)

        assert set(plan.scheme_adds) == {1, 2}
        assert plan.add_count == min(plan.scheme_adds.values())
        assert plan.scheme_adds[plan.scheme] == plan.add_count
        assert plan.optimized

    def test_not_worse_than_naive(self, gf64, fast_cse):
        """Test optimized additions never exceed the naive plan."""
        base = build_cfft(gf64, 63)
        plan = optimize_cfft(base, cfg=fast_cse)

        assert plan.add_count <= base.add_count
        assert base.add_count == naive_add_count(base.P) + naive_add_count(base.A @ base.Q)

    @pytest.mark.parametrize("scheme,programs", [(1, 1), (2, 2)])
    def test_forced_scheme(self, gf16, fast_cse, scheme, programs):
        """Test a forced scheme and its number of post programs."""
        plan = optimize_cfft(build_cfft(gf16, 15), scheme=scheme, cfg=fast_cse)

        assert plan.scheme == scheme
        assert len(plan.post) == programs
        assert set(plan.scheme_adds) == {scheme}
        check_programs(plan)

    def test_unknown_scheme(self, gf16):
        """Test schemes other than 1 and 2."""
        with pytest.raises(PlanError):
            optimize_cfft(build_cfft(gf16, 15), scheme=3)

    @pytest.mark.parametrize("l,n", [(4, 15), (6, 63), (8, 17), (8, 51)])
    def test_optimized_matches_oracle(self, rng, fast_cse, l, n):
        """Test optimized plans still compute the DFT."""
        ctx = make_field(l)
        plan = optimize_cfft(build_cfft(ctx, n), cfg=fast_cse)

        assert_matches_oracle(plan, rng.integers(0, ctx.size, size=(n, 30)))

    def test_complexity(self, gf16, fast_cse):
        """Test the report uses the plan's counts."""
        plan = optimize_cfft(build_cfft(gf16, 15), cfg=fast_cse)
        report = cfft_complexity(plan)

        assert report.mult == 16
        assert report.add == plan.add_count
        assert report.total == 7 * 16 + plan.add_count
