"""Arithmetic in GF(2^l), 4 <= l <= 12, with exp/log tables."""

import math
import re
from functools import lru_cache

import galois
import numpy as np

from pfcft.errors import FieldError

MIN_DEGREE = 4
MAX_DEGREE = 12

# Packed polynomial-basis value; bit i is the coefficient of alpha^i.
FieldElement = int

_FIELD_PATTERN = re.compile(r"^GF\(2\^(\d+)\)/prim_poly=(?:0x)?([0-9a-fA-F]+)$")


@lru_cache(maxsize=None)
def smallest_primitive_poly(degree: int) -> int:
    """Lexicographically smallest primitive polynomial of the given degree."""
    if degree < 1:
        raise FieldError(f"no primitive polynomial of degree {degree}")
    return int(galois.primitive_poly(2, degree, method="min"))


class FieldCtx:
    """A concrete GF(2^l) in polynomial basis.

    Immutable after construction; the tables are read-only numpy arrays and
    every method is a pure function of its arguments.
    """

    def __init__(self, l: int, prim_poly: int):
        """Build exp/log tables and verify that prim_poly is primitive.

        Args:
            l: Extension degree, 4..12
            prim_poly: Polynomial with bit i the coefficient of x^i
        """
        if not MIN_DEGREE <= l <= MAX_DEGREE:
            raise FieldError(
                f"extension degree {l} outside [{MIN_DEGREE}, {MAX_DEGREE}]"
            )
        if prim_poly >> l != 1:
            raise FieldError(f"polynomial {prim_poly:#x} does not have degree {l}")
        if not galois.Poly.Int(prim_poly).is_primitive():
            raise FieldError(f"polynomial {prim_poly:#x} is not primitive")

        self.l = l
        self.prim_poly = prim_poly
        self.size = 1 << l
        self.order = self.size - 1

        exp_table = np.zeros(self.order, dtype=np.int64)
        log_table = np.full(self.size, -1, dtype=np.int64)
        x = 1
        for i in range(self.order):
            exp_table[i] = x
            log_table[x] = i
            x <<= 1
            if x & self.size:
                x ^= prim_poly

        exp_table.flags.writeable = False
        log_table.flags.writeable = False
        self.exp_table = exp_table
        self.log_table = log_table

    def __repr__(self) -> str:
        return f"FieldCtx({self.describe()})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return self.l == other.l and self.prim_poly == other.prim_poly

    def __hash__(self) -> int:
        return hash((self.l, self.prim_poly))

    @property
    def primitive_element(self) -> FieldElement:
        """The root of prim_poly, i.e. x."""
        return int(self.exp_table[1])

    def describe(self) -> str:
        """Serialize as `GF(2^l)/prim_poly=<hex>`."""
        return f"GF(2^{self.l})/prim_poly={self.prim_poly:x}"

    def check(self, a: FieldElement) -> FieldElement:
        """Validate that a is an element of this field."""
        if not 0 <= a < self.size:
            raise FieldError(f"{a:#x} is not an element of {self.describe()}")
        return a

    def log(self, a: FieldElement) -> int:
        """Discrete logarithm to base alpha."""
        if a == 0:
            raise FieldError("logarithm of zero")
        return int(self.log_table[self.check(a)])

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        """Product of two elements."""
        if a == 0 or b == 0:
            return 0
        return int(
            self.exp_table[(self.log_table[a] + self.log_table[b]) % self.order]
        )

    def mul_vec(self, a, b) -> np.ndarray:
        """Entry-wise product of two broadcastable integer arrays."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        prod = self.exp_table[(self.log_table[a] + self.log_table[b]) % self.order]
        return np.where((a == 0) | (b == 0), 0, prod)

    def inv(self, a: FieldElement) -> FieldElement:
        """Multiplicative inverse."""
        if a == 0:
            raise FieldError("zero has no inverse")
        return int(self.exp_table[(-self.log_table[a]) % self.order])

    def pow(self, a: FieldElement, k: int) -> FieldElement:
        """a^k, with the exponent reduced mod 2^l - 1 for nonzero a."""
        if a == 0:
            if k < 0:
                raise FieldError("negative power of zero")
            return 1 if k == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * k) % self.order])

    def square(self, a: FieldElement) -> FieldElement:
        """a^2."""
        return self.mul(a, a)

    def frobenius(self, a: FieldElement, k: int = 1) -> FieldElement:
        """a^(2^k)."""
        if a == 0:
            return 0
        return int(
            self.exp_table[(int(self.log_table[a]) << (k % self.l)) % self.order]
        )

    def trace(self, a: FieldElement) -> FieldElement:
        """Absolute trace a + a^2 + ... + a^(2^(l-1)); always 0 or 1."""
        total = 0
        for k in range(self.l):
            total ^= self.frobenius(a, k)
        return total

    def element_order(self, a: FieldElement) -> int:
        """Multiplicative order of a nonzero element."""
        return self.order // math.gcd(self.log(a), self.order)

    def nth_root(self, n: int) -> FieldElement:
        """Element of multiplicative order exactly n."""
        if n < 1 or self.order % n:
            raise FieldError(f"{n} does not divide {self.order}")
        return int(self.exp_table[(self.order // n) % self.order])


@lru_cache(maxsize=None)
def make_field(l: int) -> FieldCtx:
    """GF(2^l) over the smallest primitive polynomial of degree l."""
    if not MIN_DEGREE <= l <= MAX_DEGREE:
        raise FieldError(f"extension degree {l} outside [{MIN_DEGREE}, {MAX_DEGREE}]")
    return FieldCtx(l, smallest_primitive_poly(l))


def mul(ctx: FieldCtx, a: FieldElement, b: FieldElement) -> FieldElement:
    """Product of a and b in ctx."""
    return ctx.mul(a, b)


def inv(ctx: FieldCtx, a: FieldElement) -> FieldElement:
    """Inverse of a in ctx."""
    return ctx.inv(a)


def pow(ctx: FieldCtx, a: FieldElement, k: int) -> FieldElement:  # noqa: A001
    """a^k in ctx."""
    return ctx.pow(a, k)


def nth_root(ctx: FieldCtx, n: int) -> FieldElement:
    """Element of order n in ctx."""
    return ctx.nth_root(n)


def parse_field(text: str) -> FieldCtx:
    """Inverse of FieldCtx.describe()."""
    match = _FIELD_PATTERN.match(text.strip())
    if not match:
        raise FieldError(f"malformed field description: {text!r}")
    l = int(match.group(1))
    prim_poly = int(match.group(2), 16)
    if not MIN_DEGREE <= l <= MAX_DEGREE:
        raise FieldError(f"extension degree {l} outside [{MIN_DEGREE}, {MAX_DEGREE}]")
    if prim_poly == smallest_primitive_poly(l):
        return make_field(l)
    return FieldCtx(l, prim_poly)


def format_element(a: FieldElement) -> str:
    """Lowercase hex, no prefix."""
    return f"{a:x}"


def parse_element(ctx: FieldCtx, text: str) -> FieldElement:
    """Hex text to an element of ctx."""
    try:
        value = int(text.strip(), 16)
    except ValueError as e:
        raise FieldError(f"not a hex field element: {text!r}") from e
    return ctx.check(value)
