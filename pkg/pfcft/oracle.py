"""Brute-force reference transforms, kept independent of the fast paths."""

from pfcft.errors import OracleError
from pfcft.field import FieldCtx, FieldElement


def naive_dft(ctx: FieldCtx, alpha: FieldElement, f) -> list[FieldElement]:
    """F_k = sum_n f_n alpha^(n k), by the double loop."""
    f = [int(x) for x in f]
    n = len(f)
    if n == 0 or n % 2 == 0:
        raise OracleError(f"DFT length must be odd and positive, got {n}")
    if alpha == 0 or ctx.element_order(alpha) != n:
        raise OracleError(f"alpha={alpha:#x} does not have order {n}")
    out = []
    for k in range(n):
        acc = 0
        root = ctx.pow(alpha, k)
        power = 1
        for value in f:
            acc ^= ctx.mul(value, power)
            power = ctx.mul(power, root)
        out.append(acc)
    return out


def naive_cyclic_convolution(ctx: FieldCtx, a, b) -> list[FieldElement]:
    """out_k = sum_j a_j b_((k - j) mod L)."""
    a = [int(x) for x in a]
    b = [int(x) for x in b]
    if len(a) != len(b):
        raise OracleError(f"operand lengths differ: {len(a)} and {len(b)}")
    n = len(a)
    out = []
    for k in range(n):
        acc = 0
        for j in range(n):
            acc ^= ctx.mul(a[j], b[(k - j) % n])
        out.append(acc)
    return out
