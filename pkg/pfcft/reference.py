"""Shipped reference operation counts (pfcft/data/reference.toml)."""

import tomllib
from functools import lru_cache
from importlib.resources import files
from typing import Optional

from pydantic import BaseModel, ConfigDict

from pfcft.cfft import ComplexityReport
from pfcft.errors import PlanError


class ConvReference(BaseModel):
    model_config = ConfigDict(frozen=True)

    length: int
    mult: int
    add_q: int
    add_p: int
    note: Optional[str] = None

    @property
    def add(self) -> int:
        """C(Q) + C(P)."""
        return self.add_q + self.add_p


class CfftReference(BaseModel):
    model_config = ConfigDict(frozen=True)

    length: int
    mult: int
    add_scheme1: int
    add_scheme2: int

    @property
    def best_scheme(self) -> int:
        """Scheme with the smaller addition count (scheme 1 on ties)."""
        return 1 if self.add_scheme1 <= self.add_scheme2 else 2

    @property
    def add(self) -> int:
        """Additions of the cheaper scheme."""
        return min(self.add_scheme1, self.add_scheme2)


class PfcftReference(BaseModel):
    model_config = ConfigDict(frozen=True)

    length: int
    l: int
    factors: tuple[int, ...]
    mult: int
    add: int
    total: int
    note: Optional[str] = None


class ComparisonRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    length: int
    method: str
    mult: int
    add: int
    total: int
    note: Optional[str] = None


class ReferenceData(BaseModel):
    model_config = ConfigDict(frozen=True)

    conv: tuple[ConvReference, ...]
    cfft: tuple[CfftReference, ...]
    pfcft: tuple[PfcftReference, ...]
    comparison: tuple[ComparisonRow, ...]

    def conv_row(self, length: int) -> Optional[ConvReference]:
        """Convolution row for length, if published."""
        return next((row for row in self.conv if row.length == length), None)

    def cfft_row(self, length: int) -> Optional[CfftReference]:
        """CFFT row for length, if published."""
        return next((row for row in self.cfft if row.length == length), None)

    def pfcft_rows(self, length: int) -> list[PfcftReference]:
        """Published prime-factor rows for length."""
        return [row for row in self.pfcft if row.length == length]

    def comparison_rows(self, length: int) -> list[ComparisonRow]:
        """Published comparison rows for length."""
        return [row for row in self.comparison if row.length == length]


@lru_cache(maxsize=1)
def load_reference() -> ReferenceData:
    """Shipped reference counts, parsed once."""
    text = files("pfcft").joinpath("data/reference.toml").read_text()
    return ReferenceData.model_validate(tomllib.loads(text))


def cfft_reference_report(n: int, l: int) -> ComplexityReport:
    """Reference counts of the n-point CFFT weighted for GF(2^l)."""
    row = load_reference().cfft_row(n)
    if row is None:
        raise PlanError(f"no reference counts for a {n}-point CFFT")
    return ComplexityReport.from_counts(row.mult, row.add, l)
