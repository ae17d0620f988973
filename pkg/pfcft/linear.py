"""Binary matrices, XOR straight-line programs and small field matrices."""

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Optional

import numpy as np

from pfcft.errors import MatrixError, PlanFormatError, ProgramError, SingularMatrixError
from pfcft.field import FieldCtx


class BinaryMatrix:
    """Dense matrix over GF(2), stored as a read-only uint8 numpy array."""

    def __init__(self, bits):
        array = np.array(bits, dtype=np.int64)
        if array.ndim != 2:
            raise MatrixError(f"expected a 2-D matrix, got shape {array.shape}")
        if not np.all((array == 0) | (array == 1)):
            raise MatrixError("binary matrix entries must be 0 or 1")
        self.bits = array.astype(np.uint8)
        self.bits.flags.writeable = False

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        """n x n identity."""
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BinaryMatrix":
        """All-zero matrix."""
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def from_rows(cls, rows: Sequence[str | Sequence[int]]) -> "BinaryMatrix":
        """Build from rows given as '0101' strings or 0/1 sequences."""
        parsed = [
            [int(ch) for ch in row] if isinstance(row, str) else list(row)
            for row in rows
        ]
        width = len(parsed[0]) if parsed else 0
        if any(len(row) != width for row in parsed):
            raise MatrixError("ragged rows")
        return cls(np.array(parsed, dtype=np.int64).reshape(len(parsed), width))

    @staticmethod
    def block_diag(blocks: Sequence["BinaryMatrix"]) -> "BinaryMatrix":
        """Block-diagonal matrix of the given blocks."""
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = np.zeros((rows, cols), dtype=np.uint8)
        r = c = 0
        for block in blocks:
            out[r : r + block.rows, c : c + block.cols] = block.bits
            r += block.rows
            c += block.cols
        return BinaryMatrix(out)

    @property
    def rows(self) -> int:
        """Number of rows."""
        return self.bits.shape[0]

    @property
    def cols(self) -> int:
        """Number of columns."""
        return self.bits.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        """(rows, cols)."""
        return self.rows, self.cols

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.rows}x{self.cols})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self) -> int:
        return hash(self.key())

    def __matmul__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        """Product over GF(2)."""
        if self.cols != other.rows:
            raise MatrixError(f"cannot multiply {self.shape} by {other.shape}")
        product = self.bits.astype(np.int64) @ other.bits.astype(np.int64)
        return BinaryMatrix(product & 1)

    def key(self) -> tuple[int, int, bytes]:
        """Hashable identity, used to share work between equal blocks."""
        return self.rows, self.cols, self.bits.tobytes()

    def row_weights(self) -> np.ndarray:
        """Ones per row."""
        return self.bits.sum(axis=1, dtype=np.int64)

    def row_supports(self) -> list[list[int]]:
        """Column indices of the ones in each row, ascending."""
        return [np.flatnonzero(row).tolist() for row in self.bits]

    def kron(self, other: "BinaryMatrix") -> "BinaryMatrix":
        """Kronecker product over GF(2)."""
        return BinaryMatrix(np.kron(self.bits, other.bits))

    def permute_rows(self, perm: Sequence[int]) -> "BinaryMatrix":
        """Row i of the result is row perm[i] of self."""
        return BinaryMatrix(self.bits[np.asarray(perm, dtype=np.int64), :])

    def permute_cols(self, perm: Sequence[int]) -> "BinaryMatrix":
        """Column j of the result is column perm[j] of self."""
        return BinaryMatrix(self.bits[:, np.asarray(perm, dtype=np.int64)])

    def to_text(self) -> str:
        """One row of 0/1 characters per line."""
        return "\n".join("".join(str(int(b)) for b in row) for row in self.bits)

    @classmethod
    def from_text(cls, text: str) -> "BinaryMatrix":
        """Inverse of to_text."""
        rows = [line.strip() for line in text.splitlines() if line.strip()]
        if any(set(row) - {"0", "1"} for row in rows):
            raise PlanFormatError("binary matrix rows may only contain 0 and 1")
        return cls.from_rows(rows)


def apply_matrix(matrix: BinaryMatrix, x) -> np.ndarray:
    """y_i = XOR of x_j over the ones of row i.

    x may carry trailing batch axes; axis 0 indexes the matrix columns.
    """
    x = np.asarray(x, dtype=np.int64)
    if x.ndim == 0 or x.shape[0] != matrix.cols:
        raise MatrixError(
            f"vector of length {x.shape[0] if x.ndim else 0} "
            f"does not match {matrix.cols} columns"
        )
    out = np.zeros((matrix.rows,) + x.shape[1:], dtype=np.int64)
    for i, support in enumerate(matrix.row_supports()):
        if support:
            out[i] = np.bitwise_xor.reduce(x[support], axis=0)
    return out


def gf2_rank(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of vectors packed as integers."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


_STEP_LINE = re.compile(r"^t(\d+)\s*=\s*([xt]\d+)\s*\^\s*([xt]\d+)$")
_OUTPUT_LINE = re.compile(r"^y(\d+)\s*=\s*([xt]\d+|0)$")
_HEADER_LINE = re.compile(r"^program inputs=(\d+) outputs=(\d+) steps=(\d+)$")


@dataclass(frozen=True)
class AdditionProgram:
    """Straight-line XOR program.

    Operand indices below num_inputs name inputs; index num_inputs + k
    names the value defined by step k. An output of None is the zero
    constant.
    """

    num_inputs: int
    steps: tuple[tuple[int, int], ...]
    outputs: tuple[Optional[int], ...]

    def __post_init__(self):
        if self.num_inputs < 0:
            raise ProgramError("negative input count")
        for k, (a, b) in enumerate(self.steps):
            limit = self.num_inputs + k
            if not (0 <= a < limit and 0 <= b < limit):
                raise ProgramError(f"step t{k} references an undefined value")
        limit = self.num_inputs + len(self.steps)
        for i, out in enumerate(self.outputs):
            if out is not None and not 0 <= out < limit:
                raise ProgramError(f"output y{i} references an undefined value")

    @property
    def add_count(self) -> int:
        """Number of XOR steps."""
        return len(self.steps)

    @property
    def num_outputs(self) -> int:
        """Number of outputs."""
        return len(self.outputs)

    def _operand(self, index: int) -> str:
        if index < self.num_inputs:
            return f"x{index}"
        return f"t{index - self.num_inputs}"

    def to_text(self) -> str:
        """Header, one line per step, one line per output."""
        lines = [
            f"program inputs={self.num_inputs} outputs={self.num_outputs} "
            f"steps={self.add_count}"
        ]
        for k, (a, b) in enumerate(self.steps):
            lines.append(f"t{k} = {self._operand(a)} ^ {self._operand(b)}")
        for i, out in enumerate(self.outputs):
            lines.append(f"y{i} = {'0' if out is None else self._operand(out)}")
        return "\n".join(lines)

    @classmethod
    def from_lines(cls, lines: Sequence[str]) -> "AdditionProgram":
        """Parse the text produced by to_text()."""
        if not lines:
            raise PlanFormatError("empty program")
        header = _HEADER_LINE.match(lines[0].strip())
        if not header:
            raise PlanFormatError(f"bad program header: {lines[0]!r}")
        num_inputs, num_outputs, num_steps = (int(g) for g in header.groups())
        body = [line.strip() for line in lines[1:]]
        if len(body) != num_steps + num_outputs:
            raise PlanFormatError("program body length does not match its header")

        def operand(token: str) -> int:
            index = int(token[1:])
            if token[0] == "x":
                if index >= num_inputs:
                    raise PlanFormatError(f"unknown input {token}")
                return index
            return num_inputs + index

        steps = []
        for k, line in enumerate(body[:num_steps]):
            match = _STEP_LINE.match(line)
            if not match or int(match.group(1)) != k:
                raise PlanFormatError(f"bad program step: {line!r}")
            steps.append((operand(match.group(2)), operand(match.group(3))))
        outputs: list[Optional[int]] = []
        for i, line in enumerate(body[num_steps:]):
            match = _OUTPUT_LINE.match(line)
            if not match or int(match.group(1)) != i:
                raise PlanFormatError(f"bad program output: {line!r}")
            token = match.group(2)
            outputs.append(None if token == "0" else operand(token))
        try:
            return cls(num_inputs, tuple(steps), tuple(outputs))
        except ProgramError as e:
            raise PlanFormatError(str(e)) from e

    @classmethod
    def from_text(cls, text: str) -> "AdditionProgram":
        """Inverse of to_text."""
        return cls.from_lines([line for line in text.splitlines() if line.strip()])


def run_program(program: AdditionProgram, x) -> np.ndarray:
    """Evaluate the program; x may carry trailing batch axes."""
    x = np.asarray(x, dtype=np.int64)
    if x.ndim == 0 or x.shape[0] != program.num_inputs:
        raise ProgramError(
            f"program expects {program.num_inputs} inputs, "
            f"got {x.shape[0] if x.ndim else 0}"
        )
    values = list(x)
    for a, b in program.steps:
        values.append(values[a] ^ values[b])
    zero = np.zeros(x.shape[1:], dtype=np.int64)
    if not program.outputs:
        return np.zeros((0,) + x.shape[1:], dtype=np.int64)
    return np.stack(
        [zero if out is None else np.asarray(values[out]) for out in program.outputs]
    )


def naive_compile(matrix: BinaryMatrix) -> AdditionProgram:
    """Left-to-right XOR chain per row, no sharing."""
    steps: list[tuple[int, int]] = []
    outputs: list[Optional[int]] = []
    for support in matrix.row_supports():
        if not support:
            outputs.append(None)
            continue
        acc = support[0]
        for col in support[1:]:
            steps.append((acc, col))
            acc = matrix.cols + len(steps) - 1
        outputs.append(acc)
    return AdditionProgram(matrix.cols, tuple(steps), tuple(outputs))


def naive_add_count(matrix: BinaryMatrix) -> int:
    """Additions of naive_compile(matrix)."""
    return int(np.maximum(matrix.row_weights() - 1, 0).sum())


def program_matrix(program: AdditionProgram) -> BinaryMatrix:
    """The binary matrix computed by a program, read off the basis vectors."""
    basis = np.eye(program.num_inputs, dtype=np.int64)
    return BinaryMatrix(run_program(program, basis).reshape(program.num_outputs, -1))


def stack_programs(programs: Sequence[AdditionProgram]) -> AdditionProgram:
    """Block-diagonal combination with disjoint input and output ranges."""
    total_inputs = sum(p.num_inputs for p in programs)
    steps: list[tuple[int, int]] = []
    outputs: list[Optional[int]] = []
    input_offset = 0
    for program in programs:
        step_base = total_inputs + len(steps)

        def remap(index: int) -> int:
            if index < program.num_inputs:
                return input_offset + index
            return step_base + index - program.num_inputs

        for a, b in program.steps:
            steps.append((remap(a), remap(b)))
        for out in program.outputs:
            outputs.append(None if out is None else remap(out))
        input_offset += program.num_inputs
    return AdditionProgram(total_inputs, tuple(steps), tuple(outputs))


def field_matmul(ctx: FieldCtx, a, b) -> np.ndarray:
    """Matrix product over GF(2^l)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise MatrixError(f"cannot multiply {a.shape} by {b.shape}")
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        out ^= ctx.mul_vec(a[:, k : k + 1], b[k : k + 1, :])
    return out


def field_invert(ctx: FieldCtx, matrix) -> np.ndarray:
    """Gauss-Jordan inverse over GF(2^l)."""
    m = np.array(matrix, dtype=np.int64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise MatrixError(f"cannot invert a non-square matrix of shape {m.shape}")
    n = m.shape[0]
    aug = np.concatenate([m, np.eye(n, dtype=np.int64)], axis=1)
    for col in range(n):
        nonzero = np.flatnonzero(aug[col:, col])
        if nonzero.size == 0:
            raise SingularMatrixError("matrix is singular")
        pivot = col + int(nonzero[0])
        if pivot != col:
            aug[[col, pivot]] = aug[[pivot, col]]
        aug[col] = ctx.mul_vec(aug[col], ctx.inv(int(aug[col, col])))
        for r in range(n):
            factor = int(aug[r, col])
            if r != col and factor:
                aug[r] ^= ctx.mul_vec(aug[col], factor)
    return aug[:, n:].copy()
