"""Bilinear cyclic convolution algorithms over GF(2), lengths 1..12.

An algorithm is a triple (P, Q, R) of binary matrices with
Q (R a * P b) = a (*) b, where * is the entry-wise product of the t
intermediate values and (*) is L-point cyclic convolution. The operand a
goes through R; in a transform plan it is the precomputed constant side.

Construction: x^L + 1 is split by the CRT into factors g^(2^e). Powers of
x + 1 are multiplied in the y = x + 1 basis, where the constant term of the
R side is a(1) and its products cost nothing once a(1) = 1. The sextic
x^6 + x^3 + 1 uses a Toom-Cook scheme over GF(4); other factors use
Karatsuba followed by reduction. Lengths 10 and 12 are tensor products of
coprime shorter lengths.
"""

import math
import re
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import galois
import numpy as np

from pfcft.errors import ConvolutionError, PlanFormatError
from pfcft.field import FieldCtx
from pfcft.linear import BinaryMatrix, apply_matrix

MAX_LENGTH = 12

# Lengths assembled from two coprime shorter lengths.
COMPOSITE_LENGTHS = {10: (2, 5), 12: (3, 4)}

# x^6 + x^3 + 1
_SEXTIC = 0b1001001


# -- GF(2)[x] on packed integers ---------------------------------------------

GF2 = galois.GF(2)


def _poly(a: int) -> galois.Poly:
    return galois.Poly.Int(a, field=GF2)


def _deg(a: int) -> int:
    return a.bit_length() - 1


def _pmul(a: int, b: int) -> int:
    return int(_poly(a) * _poly(b))


def _pdivmod(a: int, b: int) -> tuple[int, int]:
    q, r = divmod(_poly(a), _poly(b))
    return int(q), int(r)


def _pmod(a: int, b: int) -> int:
    return int(_poly(a) % _poly(b))


def _pinv(a: int, m: int) -> int:
    """Inverse of a modulo m."""
    modulus = _poly(m)
    d, s, _ = galois.egcd(_poly(a) % modulus, modulus)
    if d != galois.Poly.One(GF2):
        raise ConvolutionError(f"{a:#b} is not invertible modulo {m:#b}")
    return int(s % modulus)


def _irreducible_factors(poly: int) -> list[int]:
    """Distinct irreducible factors of a squarefree polynomial, ascending."""
    factors, _ = _poly(poly).factors()
    return sorted(int(f) for f in factors)


def _crt_moduli(length: int) -> list[int]:
    """Pairwise coprime factors g^(2^e) of x^length + 1."""
    odd, power = length, 1
    while odd % 2 == 0:
        odd //= 2
        power *= 2
    return [int(_poly(g) ** power) for g in _irreducible_factors((1 << odd) | 1)]


def _reduction_matrix(modulus: int, width: int) -> np.ndarray:
    """Column i holds the coefficients of x^i mod modulus."""
    d = _deg(modulus)
    out = np.zeros((d, width), dtype=np.int64)
    for i in range(width):
        r = _pmod(1 << i, modulus)
        for j in range(d):
            out[j, i] = (r >> j) & 1
    return out


def _lift_matrix(idempotent: int, d: int, length: int) -> np.ndarray:
    """Column i holds the coefficients of idempotent * x^i mod x^length + 1."""
    full = (1 << length) | 1
    out = np.zeros((length, d), dtype=np.int64)
    for i in range(d):
        r = _pmod(_pmul(idempotent, 1 << i), full)
        for j in range(length):
            out[j, i] = (r >> j) & 1
    return out


# -- bilinear building blocks -------------------------------------------------


class _Parts(NamedTuple):
    """R (t x n), P (t x n) and Q (outputs x t) as 0/1 integer arrays."""

    R: np.ndarray
    P: np.ndarray
    Q: np.ndarray


def _select(rows: int, width: int, offset: int) -> np.ndarray:
    out = np.zeros((rows, width), dtype=np.int64)
    out[np.arange(rows), offset + np.arange(rows)] = 1
    return out


def _linear_matrix(fn: Callable[[list[int]], list[int]], width: int) -> np.ndarray:
    """Matrix of a GF(2)-linear map given as a function on bit lists."""
    columns = []
    for i in range(width):
        basis = [0] * width
        basis[i] = 1
        columns.append(fn(basis))
    return np.array(columns, dtype=np.int64).T % 2


@lru_cache(maxsize=None)
def _karatsuba(d: int) -> _Parts:
    """Full product of two d-coefficient polynomials (2d - 1 outputs)."""
    if d == 1:
        one = np.ones((1, 1), dtype=np.int64)
        return _Parts(one, one, one)
    if d == 2:
        pre = np.array([[1, 0], [0, 1], [1, 1]], dtype=np.int64)
        post = np.array([[1, 0, 0], [1, 1, 1], [0, 1, 0]], dtype=np.int64)
        return _Parts(pre, pre, post)
    if d == 3:
        # a_i b_i for each i, then (a_i + a_j)(b_i + b_j) for i < j
        pre = np.array(
            [
                [1, 0, 0],
                [0, 1, 0],
                [0, 0, 1],
                [1, 1, 0],
                [1, 0, 1],
                [0, 1, 1],
            ],
            dtype=np.int64,
        )
        post = np.array(
            [
                [1, 0, 0, 0, 0, 0],
                [1, 1, 0, 1, 0, 0],
                [1, 1, 1, 0, 1, 0],
                [0, 1, 1, 0, 0, 1],
                [0, 0, 1, 0, 0, 0],
            ],
            dtype=np.int64,
        )
        return _Parts(pre, pre, post)

    h = (d + 1) // 2
    k = d - h
    low, high = _karatsuba(h), _karatsuba(k)
    lo = _select(h, d, 0)
    hi = _select(k, d, h)
    mid = lo.copy()
    mid[:k] ^= hi
    pre = np.vstack([low.R @ lo, high.R @ hi, low.R @ mid]) % 2
    th, tk = low.Q.shape[1], high.Q.shape[1]
    lo_cols = slice(0, th)
    hi_cols = slice(th, th + tk)
    mid_cols = slice(th + tk, 2 * th + tk)
    post = np.zeros((2 * d - 1, 2 * th + tk), dtype=np.int64)
    post[0 : 2 * h - 1, lo_cols] ^= low.Q
    post[2 * h : 2 * h + 2 * k - 1, hi_cols] ^= high.Q
    post[h : 3 * h - 1, mid_cols] ^= low.Q
    post[h : 3 * h - 1, lo_cols] ^= low.Q
    post[h : h + 2 * k - 1, hi_cols] ^= high.Q
    return _Parts(pre, pre, post)


@lru_cache(maxsize=None)
def _truncated(d: int) -> _Parts:
    """Product of two d-coefficient polynomials modulo y^d."""
    if d == 0:
        empty = np.zeros((0, 0), dtype=np.int64)
        return _Parts(empty, empty, empty)
    if d == 1:
        one = np.ones((1, 1), dtype=np.int64)
        return _Parts(one, one, one)

    h = (d + 1) // 2
    k = d - h
    low, tail = _karatsuba(h), _truncated(k)
    lo = _select(h, d, 0)
    lo_k = _select(k, d, 0)
    hi = _select(k, d, h)
    r = np.vstack([low.R @ lo, tail.R @ lo_k, tail.R @ hi])
    p = np.vstack([low.P @ lo, tail.P @ hi, tail.P @ lo_k])
    th, tk = low.Q.shape[1], tail.Q.shape[1]
    post = np.zeros((d, th + 2 * tk), dtype=np.int64)
    keep = min(d, 2 * h - 1)
    post[:keep, :th] = low.Q[:keep]
    post[h:, th : th + tk] = tail.Q
    post[h:, th + tk :] = tail.Q
    return _Parts(r % 2, p % 2, post)


def _pascal(e: int) -> np.ndarray:
    """Change of basis x -> y = x + 1 on e coefficients; its own inverse."""
    i = np.arange(e)
    return ((i[np.newaxis, :] & i[:, np.newaxis]) == i[:, np.newaxis]).astype(np.int64)


def _unit_power(e: int) -> _Parts:
    """Product modulo (x + 1)^e with e products against a(1) on the R side."""
    tail = _truncated(e - 1)
    tt = tail.Q.shape[1]
    free = np.zeros((e, e), dtype=np.int64)
    free[:, 0] = 1
    r = np.vstack([free, tail.R @ _select(e - 1, e, 1)])
    p = np.vstack([np.eye(e, dtype=np.int64), tail.P @ _select(e - 1, e, 0)])
    post = np.zeros((e, e + tt), dtype=np.int64)
    post[:, :e] = np.eye(e, dtype=np.int64)
    post[1:, e:] = tail.Q
    basis = _pascal(e)
    return _Parts(r @ basis % 2, p @ basis % 2, basis @ post % 2)


def _gf4_mul_omega(u: int, v: int, k: int) -> tuple[int, int]:
    """(u + v w) * w^k with w^2 = w + 1."""
    for _ in range(k % 3):
        u, v = v, u ^ v
    return u, v


@lru_cache(maxsize=None)
def _sextic() -> _Parts:
    """Product modulo x^6 + x^3 + 1 via evaluation at 0, 1, w, w^2, inf over GF(4).

    With w = x^3, a residue is the GF(4) quadratic sum_j (a_j + a_{j+3} w) x^j
    and x^3 = w reduces the degree-4 product.
    """

    def coefficients(bits: list[int]) -> list[tuple[int, int]]:
        return [(bits[j], bits[j + 3]) for j in range(3)]

    def evaluate(bits: list[int]) -> list[int]:
        u = coefficients(bits)
        values = [u[0]]
        for j in range(3):
            acc = (0, 0)
            for i, (cu, cv) in enumerate(u):
                su, sv = _gf4_mul_omega(cu, cv, i * j)
                acc = (acc[0] ^ su, acc[1] ^ sv)
            values.append(acc)
        values.append(u[2])
        out = []
        for vu, vv in values:
            # Karatsuba over GF(4): u1 u2, v1 v2, (u1 + v1)(u2 + v2)
            out += [vu, vv, vu ^ vv]
        return out

    def interpolate(prods: list[int]) -> list[int]:
        values = []
        for i in range(5):
            p, q, r = prods[3 * i : 3 * i + 3]
            values.append((p ^ q, r ^ p))
        c0, c4 = values[0], values[4]
        s = []
        for k in range(3):
            acc = (0, 0)
            for j in range(3):
                su, sv = _gf4_mul_omega(*values[1 + j], -j * k)
                acc = (acc[0] ^ su, acc[1] ^ sv)
            s.append(acc)
        c3 = (s[0][0] ^ c0[0], s[0][1] ^ c0[1])
        c1 = (s[1][0] ^ c4[0], s[1][1] ^ c4[1])
        c2 = s[2]
        w3 = _gf4_mul_omega(*c3, 1)
        w4 = _gf4_mul_omega(*c4, 1)
        d = [(c0[0] ^ w3[0], c0[1] ^ w3[1]), (c1[0] ^ w4[0], c1[1] ^ w4[1]), c2]
        return [d[j][0] for j in range(3)] + [d[j][1] for j in range(3)]

    pre = _linear_matrix(evaluate, 6)
    return _Parts(pre, pre, _linear_matrix(interpolate, 15))


def _modular_product(modulus: int) -> _Parts:
    d = _deg(modulus)
    if modulus == _SEXTIC:
        return _sextic()
    if modulus == _unit_power_poly(d):
        return _unit_power(d)
    full = _karatsuba(d)
    return _Parts(full.R, full.P, _reduction_matrix(modulus, 2 * d - 1) @ full.Q % 2)


def _unit_power_poly(e: int) -> int:
    return int(_poly(0b11) ** e)


# -- public API ---------------------------------------------------------------


@dataclass(frozen=True)
class BilinearConvAlgorithm:
    """Q (R a * P b) = a (*) b for L-point cyclic convolution."""

    length: int
    P: BinaryMatrix
    R: BinaryMatrix
    Q: BinaryMatrix

    def __post_init__(self):
        t = self.P.rows
        if (
            self.P.shape != (t, self.length)
            or self.R.shape != (t, self.length)
            or self.Q.shape != (self.length, t)
        ):
            raise ConvolutionError(
                f"inconsistent shapes P{self.P.shape} R{self.R.shape} Q{self.Q.shape} "
                f"for length {self.length}"
            )

    @property
    def mult_count(self) -> int:
        """Number of products t."""
        return self.P.rows

    @property
    def free_products(self) -> int:
        """Products whose R row is all ones; free when the constant sums to 1."""
        return int(np.sum(self.R.row_weights() == self.length))

    @property
    def nontrivial_mults(self) -> int:
        """Products not covered by free products."""
        return self.mult_count - self.free_products

    def to_text(self) -> str:
        """Printed form: header, then P, R and Q rows."""
        return "\n".join(
            [
                f"conv L={self.length} t={self.mult_count}",
                "P",
                self.P.to_text(),
                "R",
                self.R.to_text(),
                "Q",
                self.Q.to_text(),
            ]
        )

    @classmethod
    def from_text(cls, text: str) -> "BilinearConvAlgorithm":
        """Inverse of to_text."""
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        header = re.match(r"^conv L=(\d+) t=(\d+)$", lines[0]) if lines else None
        if not header:
            raise PlanFormatError("missing 'conv L=<n> t=<mults>' header")
        length, t = int(header.group(1)), int(header.group(2))
        try:
            p_at, r_at, q_at = lines.index("P"), lines.index("R"), lines.index("Q")
        except ValueError as e:
            raise PlanFormatError("convolution text needs P, R and Q sections") from e
        algorithm = cls(
            length,
            BinaryMatrix.from_text("\n".join(lines[p_at + 1 : r_at])),
            BinaryMatrix.from_text("\n".join(lines[r_at + 1 : q_at])),
            BinaryMatrix.from_text("\n".join(lines[q_at + 1 :])),
        )
        if algorithm.mult_count != t:
            raise PlanFormatError(f"header says t={t}, matrices have {algorithm.mult_count}")
        return algorithm


def verify_algorithm(algorithm: BilinearConvAlgorithm) -> None:
    """Check the bilinear identity on all L^2 pairs of basis vectors."""
    n = algorithm.length
    tensor = np.einsum(
        "ot,ti,tj->oij",
        algorithm.Q.bits.astype(np.int64),
        algorithm.R.bits.astype(np.int64),
        algorithm.P.bits.astype(np.int64),
    ) % 2
    idx = np.arange(n)
    expected = np.zeros((n, n, n), dtype=np.int64)
    expected[(idx[:, None] + idx[None, :]) % n, idx[:, None], idx[None, :]] = 1
    if not np.array_equal(tensor, expected):
        raise ConvolutionError(f"{n}-point algorithm does not compute cyclic convolution")


def _crt_algorithm(length: int) -> BilinearConvAlgorithm:
    full = (1 << length) | 1
    r_blocks, p_blocks, q_blocks = [], [], []
    for modulus in _crt_moduli(length):
        d = _deg(modulus)
        cofactor = _pdivmod(full, modulus)[0]
        idempotent = _pmod(_pmul(cofactor, _pinv(cofactor, modulus)), full)
        parts = _modular_product(modulus)
        reduce = _reduction_matrix(modulus, length)
        r_blocks.append(parts.R @ reduce % 2)
        p_blocks.append(parts.P @ reduce % 2)
        q_blocks.append(_lift_matrix(idempotent, d, length) @ parts.Q % 2)
    return BilinearConvAlgorithm(
        length,
        P=BinaryMatrix(np.vstack(p_blocks)),
        R=BinaryMatrix(np.vstack(r_blocks)),
        Q=BinaryMatrix(np.hstack(q_blocks)),
    )


def agarwal_cooley(
    first: BilinearConvAlgorithm, second: BilinearConvAlgorithm
) -> BilinearConvAlgorithm:
    """Tensor product of two coprime-length algorithms.

    Index n of the long convolution corresponds to (n mod L1, n mod L2).
    """
    l1, l2 = first.length, second.length
    if math.gcd(l1, l2) != 1:
        raise ConvolutionError(f"lengths {l1} and {l2} are not coprime")
    length = l1 * l2
    index = [(n % l1) * l2 + n % l2 for n in range(length)]
    algorithm = BilinearConvAlgorithm(
        length,
        P=first.P.kron(second.P).permute_cols(index),
        R=first.R.kron(second.R).permute_cols(index),
        Q=first.Q.kron(second.Q).permute_rows(index),
    )
    verify_algorithm(algorithm)
    return algorithm


@lru_cache(maxsize=None)
def bilinear_algorithm(length: int) -> BilinearConvAlgorithm:
    """Built-in, verified algorithm for 1 <= length <= 12."""
    if not 1 <= length <= MAX_LENGTH:
        raise ConvolutionError(f"no built-in algorithm for length {length}")
    if length in COMPOSITE_LENGTHS:
        a, b = COMPOSITE_LENGTHS[length]
        return agarwal_cooley(bilinear_algorithm(a), bilinear_algorithm(b))
    algorithm = _crt_algorithm(length)
    verify_algorithm(algorithm)
    return algorithm


def convolve(algorithm: BilinearConvAlgorithm, a, b, ctx: FieldCtx) -> np.ndarray:
    """a (*) b through the bilinear form; b may carry trailing batch axes."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[:1] != (algorithm.length,) or b.shape[:1] != (algorithm.length,):
        raise ConvolutionError(
            f"operands of length {a.shape[:1]} and {b.shape[:1]} "
            f"for a {algorithm.length}-point algorithm"
        )
    constant = apply_matrix(algorithm.R, a)
    if b.ndim > 1:
        constant = constant.reshape(constant.shape + (1,) * (b.ndim - a.ndim))
    return apply_matrix(algorithm.Q, ctx.mul_vec(constant, apply_matrix(algorithm.P, b)))


def short_lengths() -> Sequence[int]:
    """Lengths with a built-in algorithm."""
    return range(1, MAX_LENGTH + 1)
