"""Cyclotomic cosets, normal bases, Good-Thomas index maps and decompositions."""

import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from pfcft.errors import StructureError
from pfcft.field import FieldCtx, FieldElement
from pfcft.linear import gf2_rank

# Factor bound used when enumerating decompositions of 2^l - 1.
DEFAULT_MAX_FACTOR = 200


@dataclass(frozen=True)
class CyclotomicCoset:
    """Orbit of `representative` under doubling mod N, in doubling order."""

    representative: int
    elements: tuple[int, ...]

    @property
    def size(self) -> int:
        """Number of elements."""
        return len(self.elements)


@lru_cache(maxsize=None)
def _cosets(n: int) -> tuple[CyclotomicCoset, ...]:
    seen = [False] * n
    cosets = []
    for rep in range(n):
        if seen[rep]:
            continue
        elements = []
        x = rep
        while not seen[x]:
            seen[x] = True
            elements.append(x)
            x = (2 * x) % n
        cosets.append(CyclotomicCoset(rep, tuple(elements)))
    return tuple(cosets)


def cyclotomic_cosets(n: int) -> list[CyclotomicCoset]:
    """Cosets of Z_n under multiplication by 2, sorted by representative."""
    if n < 1:
        raise StructureError(f"coset modulus must be positive, got {n}")
    if n % 2 == 0:
        raise StructureError(f"coset modulus must be odd, got {n}")
    return list(_cosets(n))


def coset_permutation(cosets: Sequence[CyclotomicCoset]) -> list[int]:
    """Input permutation: position j of f' holds f[perm[j]]."""
    return [e for coset in cosets for e in coset.elements]


def in_subfield(ctx: FieldCtx, x: FieldElement, m: int) -> bool:
    """True when x lies in GF(2^m), i.e. x^(2^m) = x."""
    return ctx.frobenius(x, m) == x


def conjugates(ctx: FieldCtx, x: FieldElement, m: int) -> list[FieldElement]:
    """x, x^2, ..., x^(2^(m-1))."""
    return [ctx.frobenius(x, k) for k in range(m)]


@lru_cache(maxsize=None)
def _normal_basis_generator(ctx: FieldCtx, m: int) -> FieldElement:
    for gamma in range(1, ctx.size):
        if in_subfield(ctx, gamma, m) and gf2_rank(conjugates(ctx, gamma, m)) == m:
            return gamma
    raise StructureError(f"no normal basis of GF(2^{m}) in {ctx.describe()}")


def normal_basis_generator(ctx: FieldCtx, m: int) -> FieldElement:
    """Smallest element of GF(2^m) whose m conjugates are independent over GF(2)."""
    if m < 1 or ctx.l % m:
        raise StructureError(f"subfield degree {m} does not divide {ctx.l}")
    return _normal_basis_generator(ctx, m)


@dataclass(frozen=True, eq=False)
class GoodThomasMap:
    """CRT index maps for pairwise coprime factors.

    input_index[n_1, ..., n_s] is the time index n; output_index[k_1, ..., k_s]
    is the frequency index k with k mod N_i = k_i.
    """

    factors: tuple[int, ...]
    input_index: np.ndarray
    output_index: np.ndarray

    @property
    def n(self) -> int:
        """Transform length."""
        return math.prod(self.factors)

    def input_of(self, *digits: int) -> int:
        """Flat input index of the given per-axis digits."""
        return int(self.input_index[digits])

    def output_of(self, *digits: int) -> int:
        """Flat output index of the given per-axis digits."""
        return int(self.output_index[digits])

    def is_bijective(self) -> bool:
        """True when both maps are permutations of range(n)."""
        span = np.arange(self.n)
        return bool(
            np.array_equal(np.sort(self.input_index, axis=None), span)
            and np.array_equal(np.sort(self.output_index, axis=None), span)
        )


def check_coprime(factors: Sequence[int]) -> None:
    """Raise StructureError unless the factors are positive and pairwise coprime."""
    if not factors:
        raise StructureError("at least one factor is required")
    if any(f < 1 for f in factors):
        raise StructureError(f"factors must be positive: {tuple(factors)}")
    for i, a in enumerate(factors):
        for b in factors[i + 1 :]:
            if math.gcd(a, b) != 1:
                raise StructureError(f"factors {a} and {b} are not coprime")


def _two_factor(
    first: int,
    rest: int,
    rest_input: np.ndarray,
    rest_output: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    n = first * rest
    n1 = np.arange(first).reshape((first,) + (1,) * rest_input.ndim)
    input_index = (n1 * rest + rest_input[np.newaxis] * first) % n
    first_weight = pow(rest, -1, first) * rest
    rest_weight = pow(first, -1, rest) * first
    output_index = (n1 * first_weight + rest_output[np.newaxis] * rest_weight) % n
    return input_index, output_index


def good_thomas_map(factors: Sequence[int]) -> GoodThomasMap:
    """Index maps built by applying the two-factor map in ascending factor order."""
    factors = tuple(int(f) for f in factors)
    check_coprime(factors)
    if len(factors) > 1 and any(f < 2 for f in factors):
        raise StructureError(f"factors must be at least 2: {factors}")

    order = sorted(range(len(factors)), key=lambda i: factors[i])
    ordered = [factors[i] for i in order]
    input_index = np.arange(ordered[-1], dtype=np.int64)
    output_index = np.arange(ordered[-1], dtype=np.int64)
    rest = ordered[-1]
    for first in reversed(ordered[:-1]):
        input_index, output_index = _two_factor(first, rest, input_index, output_index)
        rest *= first

    # Axes follow the caller's factor order.
    inverse = np.argsort(order)
    input_index = np.transpose(input_index, inverse)
    output_index = np.transpose(output_index, inverse)
    input_index.flags.writeable = False
    output_index.flags.writeable = False
    return GoodThomasMap(factors, input_index, output_index)


def prime_power_components(n: int) -> list[int]:
    """The p^e factors of n, ascending."""
    components = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            components.append(q)
        p += 1
    if n > 1:
        components.append(n)
    return sorted(components)


def _set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    head, tail = items[0], items[1:]
    for partition in _set_partitions(tail):
        yield [[head]] + partition
        for i in range(len(partition)):
            yield partition[:i] + [[head] + partition[i]] + partition[i + 1 :]


def coprime_decompositions(
    n: int, max_factor: int = DEFAULT_MAX_FACTOR
) -> list[tuple[int, ...]]:
    """All coprime factorizations of n into at least two factors <= max_factor.

    A prime power no larger than max_factor cannot be split and is returned
    as the singleton (n,).
    """
    if n < 2:
        raise StructureError(f"cannot decompose {n}")
    components = prime_power_components(n)
    if len(components) == 1:
        return [(n,)] if n <= max_factor else []

    found = set()
    for partition in _set_partitions(components):
        if len(partition) < 2:
            continue
        factors = tuple(sorted(math.prod(group) for group in partition))
        if all(f <= max_factor for f in factors):
            found.add(factors)
    return sorted(found)


def format_decomposition(n: int, factors: Sequence[int]) -> str:
    """e.g. '255 = 3 x 85'."""
    return f"{n} = " + " x ".join(str(f) for f in factors)
