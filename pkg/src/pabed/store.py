"""In-memory columnar tables and the year-keyed catalog.

Every column is a dense value vector plus a null mask. Numeric and boolean
columns are numpy arrays; string columns are plain Python lists. Positions
flagged null hold a zero/empty placeholder that no query ever observes.

Tables are immutable once registered. The catalog allows many concurrent
readers and a single writer: registration persists the snapshot first (when
the catalog has a root directory) and then publishes the table with one
atomic dict assignment, so a concurrent lookup sees the old table or the new
one, never a mix.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import UnknownColumn, UnknownYear
from .schema import ColumnSpec, ColumnType, TableSchema
from .years import AcademicYearId, as_year

_NUMPY_DTYPES = {
    ColumnType.INT64: np.int64,
    ColumnType.FLOAT64: np.float64,
    ColumnType.BOOL: np.bool_,
}


@dataclass
class ColumnData:
    """One typed column: values plus a null mask (True = null)."""

    name: str
    dtype: ColumnType
    values: "np.ndarray | list[str]"
    nulls: np.ndarray

    def __post_init__(self) -> None:
        self.nulls = np.asarray(self.nulls, dtype=bool)
        if self.dtype is ColumnType.STRING:
            if not isinstance(self.values, list):
                self.values = list(self.values)
        else:
            self.values = np.asarray(self.values, dtype=_NUMPY_DTYPES[self.dtype])
        if len(self.values) != len(self.nulls):
            raise ValueError(
                f"column {self.name!r}: {len(self.values)} values but "
                f"{len(self.nulls)} null flags"
            )

    def __len__(self) -> int:
        return len(self.nulls)

    @property
    def null_count(self) -> int:
        return int(self.nulls.sum())

    @property
    def non_null_count(self) -> int:
        return len(self) - self.null_count

    def value_equals(self, other: "ColumnData") -> bool:
        """Observable equality: same name/type/mask and same non-null values."""
        if (
            self.name != other.name
            or self.dtype is not other.dtype
            or len(self) != len(other)
            or not np.array_equal(self.nulls, other.nulls)
        ):
            return False
        keep = ~self.nulls
        if self.dtype is ColumnType.STRING:
            return all(
                a == b
                for a, b, k in zip(self.values, other.values, keep)
                if k
            )
        return np.array_equal(
            self.values[keep],
            other.values[keep],
            equal_nan=self.dtype is ColumnType.FLOAT64,
        )


@dataclass
class Table:
    """An immutable year-keyed table with equal-length columns."""

    year: AcademicYearId
    schema: TableSchema
    columns: list[ColumnData]
    row_count: int

    def __post_init__(self) -> None:
        self.year = as_year(self.year)
        if len(self.schema) != len(self.columns):
            raise ValueError("schema and column list disagree on column count")
        for spec, col in zip(self.schema, self.columns):
            if spec.name != col.name or spec.dtype is not col.dtype:
                raise ValueError(
                    f"schema says {spec.name}:{spec.dtype}, column is "
                    f"{col.name}:{col.dtype}"
                )
            if len(col) != self.row_count:
                raise ValueError(
                    f"column {col.name!r} has {len(col)} rows, table has "
                    f"{self.row_count}"
                )
        self._by_name = {c.name: c for c in self.columns}

    @property
    def column_count(self) -> int:
        return len(self.columns)

    def column(self, name: str) -> ColumnData:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownColumn(
                f"table {self.year} has no column {name!r}"
            ) from None

    def value_equals(self, other: "Table") -> bool:
        return (
            self.year == other.year
            and self.schema == other.schema
            and self.row_count == other.row_count
            and all(
                a.value_equals(b) for a, b in zip(self.columns, other.columns)
            )
        )


def make_schema(columns: "list[ColumnData]") -> TableSchema:
    return TableSchema(tuple(ColumnSpec(c.name, c.dtype) for c in columns))


class Catalog:
    """Named collection of year tables, optionally backed by snapshot files.

    With a ``root`` directory every registration writes ``<label>.pbed``
    before the in-memory publish; ``Catalog.open`` reloads all snapshots
    found there.
    """

    def __init__(self, root: "Path | str | None" = None):
        self.root = Path(root) if root is not None else None
        self._tables: dict[AcademicYearId, Table] = {}
        self._write_lock = threading.Lock()

    @classmethod
    def open(cls, root: "Path | str") -> "Catalog":
        """Load every ``*.pbed`` snapshot under ``root`` (created if absent)."""
        from .snapshot import read_snapshot

        catalog = cls(root)
        catalog.root.mkdir(parents=True, exist_ok=True)
        for path in sorted(catalog.root.glob("*.pbed")):
            table = read_snapshot(path)
            catalog._tables[table.year] = table
        return catalog

    def __len__(self) -> int:
        return len(self._tables)

    def __contains__(self, year: "AcademicYearId | str") -> bool:
        return as_year(year) in self._tables

    def snapshot_path(self, year: "AcademicYearId | str") -> Path:
        if self.root is None:
            raise ValueError("catalog has no root directory")
        return self.root / f"{as_year(year).label}.pbed"

    def register(self, table: Table, persist: "bool | None" = None) -> None:
        """Publish ``table`` under its year, replacing any prior table.

        ``persist`` defaults to True when the catalog has a root directory.
        The snapshot is written (atomically, via rename) before the table
        becomes visible to readers.
        """
        from .snapshot import write_snapshot

        if persist is None:
            persist = self.root is not None
        with self._write_lock:
            if persist:
                self.root.mkdir(parents=True, exist_ok=True)
                write_snapshot(table, self.snapshot_path(table.year))
            self._tables[table.year] = table

    def lookup(self, year: "AcademicYearId | str") -> Table:
        key = as_year(year)
        try:
            return self._tables[key]
        except KeyError:
            raise UnknownYear(f"no table registered for {key.label}") from None

    def years(self) -> list[AcademicYearId]:
        """Registered years in ascending start-year order."""
        return sorted(self._tables)

    def entries(self) -> "list[tuple[AcademicYearId, Table]]":
        return [(y, self._tables[y]) for y in self.years()]
