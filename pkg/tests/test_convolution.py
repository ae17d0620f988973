"""Tests for bilinear cyclic convolution algorithms."""

import pytest

from pfcft.convolution import (
    BilinearConvAlgorithm,
    agarwal_cooley,
    bilinear_algorithm,
    convolve,
    short_lengths,
    verify_algorithm,
)
from pfcft.errors import ConvolutionError, PlanFormatError
from pfcft.field import make_field
from pfcft.linear import BinaryMatrix
from pfcft.oracle import naive_cyclic_convolution
from pfcft.reference import load_reference

# length: (products, products with an all-ones R row)
EXPECTED_COUNTS = {
    1: (1, 1),
    2: (3, 2),
    3: (4, 1),
    4: (9, 4),
    5: (10, 1),
    6: (12, 2),
    7: (13, 1),
    8: (27, 8),
    9: (19, 1),
    10: (30, 2),
    11: (46, 1),
    12: (36, 4),
}


class TestBuiltinAlgorithms:
    """Test suite for bilinear_algorithm."""

    def test_supported_lengths(self):
        """Test lengths 1 through 12 are built in."""
        assert list(short_lengths()) == list(range(1, 13))

    @pytest.mark.parametrize("length", range(1, 13))
    def test_identity_holds(self, length):
        """Test every built-in algorithm passes the basis-pair check."""
        verify_algorithm(bilinear_algorithm(length))

    @pytest.mark.parametrize("length,counts", sorted(EXPECTED_COUNTS.items()))
    def test_multiplication_counts(self, length, counts):
        """Test product and free-product counts per length."""
        alg = bilinear_algorithm(length)

        assert (alg.mult_count, alg.free_products) == counts
        assert alg.nontrivial_mults == counts[0] - counts[1]

    @pytest.mark.parametrize("length", [2, 3, 4, 5, 6, 7, 8, 9, 10, 12])
    def test_nontrivial_counts_match_reference(self, length):
        """Test non-free products equal the published short-convolution counts."""
        assert bilinear_algorithm(length).nontrivial_mults == (
            load_reference().conv_row(length).mult
        )

    @pytest.mark.parametrize("length", [0, 13])
    def test_unsupported_length(self, length):
        """Test lengths outside 1..12."""
        with pytest.raises(ConvolutionError):
            bilinear_algorithm(length)


class TestConvolve:
    """Test suite for convolve against the naive convolution."""

    @pytest.mark.parametrize("l", range(4, 13))
    @pytest.mark.parametrize("length", range(1, 13))
    def test_matches_naive(self, rng, l, length):
        """Test 100 random operand pairs per length and field."""
        ctx = make_field(l)
        alg = bilinear_algorithm(length)
        for _ in range(100):
            a = rng.integers(0, ctx.size, size=length)
            b = rng.integers(0, ctx.size, size=length)
            assert convolve(alg, a, b, ctx).tolist() == naive_cyclic_convolution(ctx, a, b)

    @pytest.mark.parametrize("length", range(1, 13))
    def test_commutative(self, gf256, rng, length):
        """Test convolve(a, b) = convolve(b, a) although a and b take different paths."""
        alg = bilinear_algorithm(length)
        for _ in range(50):
            a = rng.integers(0, 256, size=length)
            b = rng.integers(0, 256, size=length)
            assert convolve(alg, a, b, gf256).tolist() == convolve(alg, b, a, gf256).tolist()

    def test_batched_operand(self, gf16, rng):
        """Test b may carry a batch axis."""
        alg = bilinear_algorithm(5)
        a = rng.integers(0, 16, size=5)
        b = rng.integers(0, 16, size=(5, 7))

        out = convolve(alg, a, b, gf16)

        for j in range(7):
            assert out[:, j].tolist() == naive_cyclic_convolution(gf16, a, b[:, j])

    def test_length_mismatch(self, gf16):
        """Test operands of the wrong length."""
        with pytest.raises(ConvolutionError):
            convolve(bilinear_algorithm(3), [1, 2], [1, 2, 3], gf16)


class TestAgarwalCooley:
    """Test suite for agarwal_cooley."""

    def test_composite_of_coprime_lengths(self):
        """Test 3 and 5 give a 15-point algorithm with t1 * t2 products."""
        alg = agarwal_cooley(bilinear_algorithm(3), bilinear_algorithm(5))

        assert alg.length == 15
        assert alg.mult_count == 4 * 10
        verify_algorithm(alg)

    def test_non_coprime(self):
        """Test lengths sharing a factor."""
        with pytest.raises(ConvolutionError):
            agarwal_cooley(bilinear_algorithm(2), bilinear_algorithm(4))


class TestAlgorithmText:
    """Test suite for the algorithm text form."""

    def test_parse_printed_form(self):
        """Test an algorithm reads back from its printed form."""
        alg = bilinear_algorithm(6)

        assert BilinearConvAlgorithm.from_text(alg.to_text()) == alg

    def test_bad_header(self):
        """Test text without the conv header."""
        with pytest.raises(PlanFormatError):
            BilinearConvAlgorithm.from_text("P\n1\nR\n1\nQ\n1")

    def test_inconsistent_shapes(self):
        """Test matrices that do not fit together."""
        with pytest.raises(ConvolutionError):
            BilinearConvAlgorithm(
                2,
                P=BinaryMatrix.identity(2),
                R=BinaryMatrix.identity(2),
                Q=BinaryMatrix.identity(3),
            )

    def test_wrong_algorithm_detected(self):
        """Test the basis-pair check rejects a pointwise product."""
        with pytest.raises(ConvolutionError):
            verify_algorithm(
                BilinearConvAlgorithm(
                    2,
                    P=BinaryMatrix.identity(2),
                    R=BinaryMatrix.identity(2),
                    Q=BinaryMatrix.identity(2),
                )
            )
