"""Null-aware aggregation over catalog tables.

All operations are pure reads over immutable tables. Totals are computed
with compensated summation so they are deterministic and stable under row
reordering; INT64 columns are widened to float64, so totals are always real-
valued. Null rows never contribute to a total or a count of contributors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyRange, InvalidRange, TypeMismatch
from .schema import ColumnType
from .store import Catalog, ColumnData, Table
from .years import AcademicYearId, as_year

#: College Scorecard's undergraduate degree-seeking enrollment column; the
#: measure every interface defaults to.
DEFAULT_MEASURE = "UGDS"

_NUMERIC = (ColumnType.INT64, ColumnType.FLOAT64)

# Block width for the compensated sum. Within a block numpy's pairwise
# reduction is used; across blocks, Kahan-Babuska-Neumaier compensation.
_BLOCK = 4096


def compensated_sum(values: np.ndarray) -> float:
    """Deterministic compensated total of a float vector.

    Arrays up to one block are accumulated element-by-element with Neumaier
    compensation; longer arrays are cut into fixed blocks reduced by numpy's
    pairwise summation, and the block partials are combined with the same
    compensation. Either way the result is reproducible for a given order
    and drifts by well under 1e-9 relative under permutation.
    """
    x = np.ascontiguousarray(values, dtype=np.float64)
    if x.size == 0:
        return 0.0
    if x.size <= _BLOCK:
        partials = x
    else:
        partials = np.add.reduceat(x, np.arange(0, x.size, _BLOCK))
    total = 0.0
    carry = 0.0
    for v in partials.tolist():
        t = total + v
        if abs(total) >= abs(v):
            carry += (total - t) + v
        else:
            carry += (v - t) + total
        total = t
    return total + carry


@dataclass(frozen=True)
class AggregateResult:
    """Sum of one numeric column for one year, with contribution counts."""

    year: AcademicYearId
    column: str
    total: float
    non_null_rows: int
    null_rows: int

    def to_json_dict(self) -> dict:
        return {
            "year": self.year.label,
            "total": self.total,
            "non_null_rows": self.non_null_rows,
            "null_rows": self.null_rows,
        }


@dataclass(frozen=True)
class ComparisonResult:
    first: AggregateResult
    second: AggregateResult
    delta: float
    pct_change: "float | None"

    @property
    def column(self) -> str:
        return self.first.column

    def to_json_dict(self) -> dict:
        return {
            "column": self.column,
            "first": self.first.to_json_dict(),
            "second": self.second.to_json_dict(),
            "delta": self.delta,
            "pct_change": self.pct_change,
        }


@dataclass(frozen=True)
class TrendPoint:
    year: AcademicYearId
    total: float
    non_null_rows: int


@dataclass(frozen=True)
class TrendSeries:
    """Per-year totals for every registered year in a range, ascending."""

    column: str
    points: tuple[TrendPoint, ...]

    def to_json_dict(self) -> dict:
        return {
            "column": self.column,
            "points": [
                {
                    "year": p.year.label,
                    "total": p.total,
                    "non_null_rows": p.non_null_rows,
                }
                for p in self.points
            ],
        }


def _numeric_column(table: Table, name: str) -> ColumnData:
    column = table.column(name)
    if column.dtype not in _NUMERIC:
        raise TypeMismatch(
            f"column {name!r} has type {column.dtype}, expected INT64 or FLOAT64"
        )
    return column


def sum_column(table: Table, column: str = DEFAULT_MEASURE) -> AggregateResult:
    """Total of the non-null entries; an all-null column sums to 0 with
    non_null_rows = 0, so callers can tell "no data" from a true zero."""
    col = _numeric_column(table, column)
    present = col.values[~col.nulls]
    total = compensated_sum(present)
    return AggregateResult(
        year=table.year,
        column=column,
        total=total,
        non_null_rows=int(present.size),
        null_rows=table.row_count - int(present.size),
    )


def compare_years(
    catalog: Catalog,
    year1: "AcademicYearId | str",
    year2: "AcademicYearId | str",
    column: str = DEFAULT_MEASURE,
) -> ComparisonResult:
    """Two independent totals plus their delta and percent change.

    pct_change is None (serialized as JSON null) when the first total is 0.
    """
    first = sum_column(catalog.lookup(year1), column)
    second = sum_column(catalog.lookup(year2), column)
    delta = second.total - first.total
    pct = None if first.total == 0 else delta / first.total * 100.0
    return ComparisonResult(first=first, second=second, delta=delta, pct_change=pct)


def trend_series(
    catalog: Catalog,
    from_year: "AcademicYearId | str",
    to_year: "AcademicYearId | str",
    column: str = DEFAULT_MEASURE,
) -> TrendSeries:
    """One point per registered year in [from, to], ascending by start year.

    Years missing from the catalog are skipped, not zero-filled.
    """
    lo = as_year(from_year)
    hi = as_year(to_year)
    if lo.start_year > hi.start_year:
        raise InvalidRange(
            f"range start {lo.label} is after range end {hi.label}"
        )
    selected = [
        year
        for year in catalog.years()
        if lo.start_year <= year.start_year <= hi.start_year
    ]
    if not selected:
        raise EmptyRange(
            f"no registered academic year between {lo.label} and {hi.label}"
        )
    points = []
    for year in selected:
        agg = sum_column(catalog.lookup(year), column)
        points.append(TrendPoint(year, agg.total, agg.non_null_rows))
    return TrendSeries(column=column, points=tuple(points))


def weighted_mean(
    table: Table,
    weight_column: str,
    value_column: str,
) -> "float | None":
    """Weighted mean over rows where both columns are non-null.

    Returns None when no row qualifies or the weights sum to zero. The
    natural use is share columns: weight by enrollment (UGDS) to lift
    per-institution ethnicity or gender fractions to a population share.
    """
    weights = _numeric_column(table, weight_column)
    values = _numeric_column(table, value_column)
    both = ~weights.nulls & ~values.nulls
    if not both.any():
        return None
    w = weights.values[both].astype(np.float64)
    v = values.values[both].astype(np.float64)
    total_weight = compensated_sum(w)
    if total_weight == 0:
        return None
    return compensated_sum(w * v) / total_weight
