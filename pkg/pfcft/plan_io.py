"""Text formats for plans and field vectors.

A CFFT section is

    cfft N=<n> field=GF(2^l)/prim_poly=<hex> scheme=<s> mult=<m> add=<a>
    pi <indices>
    c <hex constants>
    pre
    <P program>
    post
    <AQ program> | <Q program> <A program>
    end

and a PFCFT file is a `pfcft N=<n> field=<field> factors=<f1>x<f2>...`
header, the flattened input and output index maps, then one CFFT section per
factor. Loading rebuilds the deterministic structure from (N, field) and
rejects files whose permutation, constants, maps or programs disagree with it.
"""

import re
from dataclasses import replace
from pathlib import Path
from typing import Optional, Union

import numpy as np

from pfcft.cfft import CfftPlan, build_cfft, cfft_complexity, check_programs
from pfcft.engine import PfcftPlan, pfcft_complexity, validate_factors
from pfcft.errors import PfcftError, PlanFormatError
from pfcft.field import FieldCtx, format_element, parse_element, parse_field
from pfcft.linear import AdditionProgram
from pfcft.structure import good_thomas_map

_CFFT_HEADER = re.compile(
    r"^cfft N=(\d+) field=(\S+) scheme=(\d) mult=(\d+) add=(\d+)$"
)
_PFCFT_HEADER = re.compile(r"^pfcft N=(\d+) field=(\S+) factors=(\d+(?:x\d+)*)$")


class _Lines:
    """Cursor over the non-blank lines of a file."""

    def __init__(self, text: str):
        self.lines = [line.strip() for line in text.splitlines() if line.strip()]
        self.pos = 0

    def next(self, what: str) -> str:
        """Next line, or PlanFormatError naming what was expected."""
        if self.pos >= len(self.lines):
            raise PlanFormatError(f"unexpected end of file, expected {what}")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def keyword(self, word: str) -> str:
        """Rest of a line that must start with word."""
        line = self.next(word)
        head, _, rest = line.partition(" ")
        if head != word:
            raise PlanFormatError(f"expected '{word}', got {line!r}")
        return rest

    def program(self) -> AdditionProgram:
        """Read one AdditionProgram."""
        header = self.next("program header")
        match = re.match(r"^program inputs=\d+ outputs=(\d+) steps=(\d+)$", header)
        if not match:
            raise PlanFormatError(f"bad program header: {header!r}")
        count = int(match.group(1)) + int(match.group(2))
        body = [self.next("program line") for _ in range(count)]
        return AdditionProgram.from_lines([header] + body)

    def done(self) -> bool:
        """True when no lines remain."""
        return self.pos >= len(self.lines)


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split()]
    except ValueError as e:
        raise PlanFormatError(f"bad {what}: {text!r}") from e


def dump_cfft(plan: CfftPlan) -> str:
    """Serialize one optimized CFFT as a cfft section."""
    lines = [
        f"cfft N={plan.n} field={plan.ctx.describe()} scheme={plan.scheme} "
        f"mult={plan.mult_count} add={plan.add_count}",
        "pi " + " ".join(str(i) for i in plan.pi),
        "c " + " ".join(format_element(int(c)) for c in plan.constants),
        "pre",
        plan.pre.to_text(),
        "post",
        *(program.to_text() for program in plan.post),
        "end",
    ]
    return "\n".join(lines)


def _read_cfft(cursor: _Lines, ctx: Optional[FieldCtx] = None) -> CfftPlan:
    header = cursor.next("cfft header")
    match = _CFFT_HEADER.match(header)
    if not match:
        raise PlanFormatError(f"bad cfft header: {header!r}")
    n = int(match.group(1))
    section_ctx = parse_field(match.group(2))
    if ctx is not None and section_ctx != ctx:
        raise PlanFormatError(f"sub-plan field {section_ctx.describe()} != {ctx.describe()}")
    scheme, mult, add = int(match.group(3)), int(match.group(4)), int(match.group(5))
    if scheme not in (1, 2):
        raise PlanFormatError(f"unknown scheme {scheme}")

    pi = _ints(cursor.keyword("pi"), "permutation")
    constants = [parse_element(section_ctx, tok) for tok in cursor.keyword("c").split()]
    cursor.keyword("pre")
    pre = cursor.program()
    cursor.keyword("post")
    post = tuple(cursor.program() for _ in range(scheme))
    cursor.keyword("end")

    try:
        base = build_cfft(section_ctx, n)
    except PfcftError as e:
        raise PlanFormatError(f"cannot rebuild {n}-point plan: {e}") from e
    if tuple(pi) != base.pi:
        raise PlanFormatError(f"{n}-point plan has a foreign input permutation")
    if not np.array_equal(np.asarray(constants, dtype=np.int64), base.constants):
        raise PlanFormatError(f"{n}-point plan constants do not match its field")
    plan = replace(base, scheme=scheme, pre=pre, post=post, optimized=True)
    try:
        check_programs(plan)
    except PfcftError as e:
        raise PlanFormatError(f"{n}-point plan programs are corrupt: {e}") from e
    if (plan.mult_count, plan.add_count) != (mult, add):
        raise PlanFormatError(
            f"{n}-point header counts ({mult}, {add}) do not match "
            f"the plan ({plan.mult_count}, {plan.add_count})"
        )
    return plan


def load_cfft(text: str) -> CfftPlan:
    """Parse a file holding exactly one cfft section."""
    cursor = _Lines(text)
    plan = _read_cfft(cursor)
    if not cursor.done():
        raise PlanFormatError("trailing content after cfft section")
    return plan


def dump_pfcft(plan: PfcftPlan) -> str:
    """Serialize a plan: header, index maps, one cfft section per factor."""
    factors = "x".join(str(f) for f in plan.factors)
    lines = [
        f"pfcft N={plan.n} field={plan.ctx.describe()} factors={factors}",
        "input_map " + " ".join(str(i) for i in plan.map.input_index.ravel()),
        "output_map " + " ".join(str(i) for i in plan.map.output_index.ravel()),
    ]
    lines += [dump_cfft(sub) for sub in plan.sub_plans]
    return "\n".join(lines) + "\n"


def load_pfcft(text: str) -> PfcftPlan:
    """Parse and validate a pfcft plan file."""
    cursor = _Lines(text)
    header = cursor.next("pfcft header")
    match = _PFCFT_HEADER.match(header)
    if not match:
        raise PlanFormatError(f"bad pfcft header: {header!r}")
    n = int(match.group(1))
    ctx = parse_field(match.group(2))
    try:
        factors = validate_factors(ctx, n, _ints(match.group(3).replace("x", " "), "factors"))
    except PfcftError as e:
        raise PlanFormatError(str(e)) from e

    gt = good_thomas_map(factors)
    input_map = _ints(cursor.keyword("input_map"), "input map")
    output_map = _ints(cursor.keyword("output_map"), "output map")
    if input_map != gt.input_index.ravel().tolist():
        raise PlanFormatError("input index map does not match the factors")
    if output_map != gt.output_index.ravel().tolist():
        raise PlanFormatError("output index map does not match the factors")

    sub_plans = []
    for factor in factors:
        sub = _read_cfft(cursor, ctx)
        if sub.n != factor:
            raise PlanFormatError(f"expected a {factor}-point sub-plan, got {sub.n}")
        sub_plans.append(sub)
    if not cursor.done():
        raise PlanFormatError("trailing content after the last sub-plan")

    report = pfcft_complexity(factors, [cfft_complexity(p) for p in sub_plans], ctx.l)
    return PfcftPlan(n, ctx, factors, gt, tuple(sub_plans), report)


def read_plan(path: Path) -> PfcftPlan:
    """Load a pfcft plan file; a bare cfft section is read as a one-factor plan."""
    try:
        text = path.read_text()
    except OSError as e:
        raise PlanFormatError(f"cannot read {path}: {e}") from e
    if text.lstrip().startswith("cfft "):
        sub = load_cfft(text)
        report = cfft_complexity(sub)
        return PfcftPlan(sub.n, sub.ctx, (sub.n,), good_thomas_map((sub.n,)), (sub,), report)
    return load_pfcft(text)


def write_plan(plan: PfcftPlan, path: Path) -> None:
    """Write dump_pfcft(plan) to path."""
    path.write_text(dump_pfcft(plan))


def read_vector(source: Union[Path, str], ctx: FieldCtx) -> list[int]:
    """Hex elements, one per line; blank lines and # comments are skipped."""
    text = source.read_text() if isinstance(source, Path) else source
    values = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            try:
                values.append(parse_element(ctx, line))
            except PfcftError as e:
                raise PlanFormatError(str(e)) from e
    return values


def format_vector(values) -> str:
    """One hex element per line."""
    return "\n".join(format_element(int(v)) for v in values) + "\n"
