"""Tests for GF(2^l) arithmetic."""

import galois
import numpy as np
import pytest

from pfcft.errors import FieldError
from pfcft.field import (
    FieldCtx,
    format_element,
    make_field,
    parse_element,
    parse_field,
    smallest_primitive_poly,
)


class TestPrimitivePolynomials:
    """Test suite for primitive polynomial selection."""

    @pytest.mark.parametrize(
        "degree,poly", [(4, 0x13), (5, 0x25), (6, 0x43), (7, 0x83), (8, 0x11D)]
    )
    def test_smallest_primitive_poly(self, degree, poly):
        """Test the lexicographically smallest primitive polynomials."""
        assert smallest_primitive_poly(degree) == poly

    def test_non_primitive_polynomial_rejected(self):
        """Test x^4+x^3+x^2+x+1 is irreducible but not primitive."""
        with pytest.raises(FieldError):
            FieldCtx(4, 0x1F)

    def test_wrong_degree_rejected(self):
        """Test a polynomial whose degree does not match l."""
        with pytest.raises(FieldError):
            FieldCtx(4, 0x25)

    @pytest.mark.parametrize("l", [3, 13])
    def test_unsupported_degree(self, l):
        """Test degrees outside 4..12 are refused."""
        with pytest.raises(FieldError):
            make_field(l)


class TestFieldArithmetic:
    """Test suite for FieldCtx operations."""

    def test_tables_are_inverse(self, gf16):
        """Test exp and log tables invert each other."""
        for a in range(1, 16):
            assert gf16.exp_table[gf16.log(a)] == a

    def test_known_product(self, gf16):
        """Test alpha * alpha^3 = alpha^4 = alpha + 1 modulo x^4+x+1."""
        assert gf16.mul(0b0010, 0b1000) == 0b0011

    def test_zero_absorbs(self, gf16):
        """Test multiplication by zero."""
        assert gf16.mul(0, 7) == 0
        assert gf16.mul(9, 0) == 0

    def test_inverse(self, gf256):
        """Test a * inv(a) = 1 for every nonzero element."""
        for a in range(1, 256):
            assert gf256.mul(a, gf256.inv(a)) == 1

    def test_inverse_of_zero(self, gf16):
        """Test zero has no inverse."""
        with pytest.raises(FieldError):
            gf16.inv(0)

    def test_pow(self, gf16):
        """Test powers of the primitive element."""
        alpha = gf16.primitive_element
        assert gf16.pow(alpha, 15) == 1
        assert gf16.pow(alpha, 4) == 0b0011
        assert gf16.pow(0, 0) == 1
        assert gf16.pow(0, 3) == 0

    def test_mul_vec_matches_mul(self, gf16):
        """Test vectorised multiplication on every pair."""
        a, b = np.meshgrid(np.arange(16), np.arange(16), indexing="ij")
        product = gf16.mul_vec(a, b)
        for i in range(16):
            for j in range(16):
                assert product[i, j] == gf16.mul(i, j)

    def test_frobenius_has_period_l(self, gf64):
        """Test a^(2^l) = a."""
        for a in range(64):
            assert gf64.frobenius(a, 6) == a
            assert gf64.frobenius(a) == gf64.square(a)

    def test_trace_is_binary(self, gf256):
        """Test the absolute trace lies in GF(2) and is 1 for half the field."""
        traces = [gf256.trace(a) for a in range(256)]
        assert set(traces) == {0, 1}
        assert sum(traces) == 128


class TestFieldProperties:
    """Algebraic identities every supported field satisfies."""

    def test_frobenius_additive_exhaustive(self, gf16):
        """Test (a + b)^2 = a^2 + b^2 for every pair in GF(16)."""
        for a in range(16):
            for b in range(16):
                assert gf16.square(a ^ b) == gf16.square(a) ^ gf16.square(b)

    @pytest.mark.parametrize("l", range(4, 13))
    def test_frobenius_additive(self, rng, l):
        """Test (a + b)^2 = a^2 + b^2 on random pairs."""
        ctx = make_field(l)
        for a, b in rng.integers(0, ctx.size, size=(200, 2)).tolist():
            assert ctx.square(a ^ b) == ctx.square(a) ^ ctx.square(b)

    @pytest.mark.parametrize("l", range(4, 13))
    def test_log_of_product(self, rng, l):
        """Test log(ab) = log a + log b mod 2^l - 1."""
        ctx = make_field(l)
        for a, b in rng.integers(1, ctx.size, size=(200, 2)).tolist():
            assert ctx.log(ctx.mul(a, b)) == (ctx.log(a) + ctx.log(b)) % ctx.order

    @pytest.mark.parametrize("l", range(4, 13))
    def test_every_nonzero_element_has_order_dividing_field_order(self, l):
        """Test x^(2^l - 1) = 1 for every nonzero x."""
        ctx = make_field(l)
        for x in range(1, ctx.size):
            assert ctx.pow(x, ctx.order) == 1


class TestAgainstGalois:
    """Cross-checks with the galois package."""

    @pytest.mark.parametrize("l", range(4, 13))
    def test_polynomial_is_primitive(self, l):
        """Test the chosen polynomial is primitive of degree l."""
        poly = galois.Poly.Int(make_field(l).prim_poly)

        assert poly.degree == l
        assert poly.is_primitive()

    @pytest.mark.parametrize("l", range(4, 13))
    def test_products_agree(self, rng, l):
        """Test products and inverses agree with galois.GF over the same polynomial."""
        ctx = make_field(l)
        gf = galois.GF(2**l, irreducible_poly=ctx.prim_poly)
        a = rng.integers(0, ctx.size, size=500)
        b = rng.integers(1, ctx.size, size=500)

        assert ctx.mul_vec(a, b).tolist() == (gf(a) * gf(b)).tolist()
        assert [ctx.inv(int(x)) for x in b] == (gf(1) / gf(b)).tolist()


class TestRoots:
    """Test suite for roots of unity."""

    @pytest.mark.parametrize("n", [1, 3, 5, 15])
    def test_nth_root_order(self, gf16, n):
        """Test nth_root returns an element of order exactly n."""
        assert gf16.element_order(gf16.nth_root(n)) == n

    def test_nth_root_requires_divisor(self, gf16):
        """Test n must divide 2^l - 1."""
        with pytest.raises(FieldError):
            gf16.nth_root(7)


class TestSerialization:
    """Test suite for field and element text forms."""

    def test_describe(self, gf16):
        """Test the field description."""
        assert gf16.describe() == "GF(2^4)/prim_poly=13"

    def test_parse_field(self, gf256):
        """Test parsing a description back to an equal field."""
        assert parse_field(gf256.describe()) == gf256

    def test_parse_field_non_default_polynomial(self):
        """Test a different primitive polynomial gives a different field."""
        ctx = parse_field("GF(2^4)/prim_poly=19")
        assert ctx.prim_poly == 0x19
        assert ctx != make_field(4)

    @pytest.mark.parametrize(
        "text",
        ["GF(2^4)", "GF(2^13)/prim_poly=201b", "GF(2^4)/prim_poly=1f", "nonsense"],
    )
    def test_parse_field_rejects(self, text):
        """Test malformed, unsupported or non-primitive descriptions."""
        with pytest.raises(FieldError):
            parse_field(text)

    def test_elements(self, gf16):
        """Test hex element parsing and formatting."""
        assert format_element(10) == "a"
        assert parse_element(gf16, " A ") == 10
        with pytest.raises(FieldError):
            parse_element(gf16, "ff")
        with pytest.raises(FieldError):
            parse_element(gf16, "zz")
