"""Column types and the promotion lattice used by schema inference.

The lattice is intentionally tiny: INT64 < FLOAT64 < STRING on the numeric
side and BOOL < STRING on the other, with STRING as the universal top. The
join of two incomparable kinds (say INT64 and BOOL) is therefore STRING.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class ColumnType(Enum):
    # values are the wire names used in JSON bodies and CLI output
    INT64 = "int64"
    FLOAT64 = "float64"
    BOOL = "bool"
    STRING = "string"

    def __str__(self) -> str:
        return self.value


# Height of each kind in the lattice; used only for the numeric chain.
_NUMERIC_ORDER = {ColumnType.INT64: 0, ColumnType.FLOAT64: 1}


def promote(a: ColumnType, b: ColumnType) -> ColumnType:
    """Least upper bound of two column types (commutative, idempotent)."""
    if a is b:
        return a
    if a in _NUMERIC_ORDER and b in _NUMERIC_ORDER:
        return ColumnType.FLOAT64
    # Any other mix (numeric vs BOOL, anything vs STRING) tops out.
    return ColumnType.STRING


@dataclass(frozen=True)
class ColumnSpec:
    name: str
    dtype: ColumnType


@dataclass(frozen=True)
class TableSchema:
    """Ordered column names and inferred types for one table."""

    columns: tuple[ColumnSpec, ...]

    def __len__(self) -> int:
        return len(self.columns)

    def __iter__(self):
        return iter(self.columns)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns)

    def dtype_of(self, name: str) -> ColumnType | None:
        for c in self.columns:
            if c.name == name:
                return c.dtype
        return None
