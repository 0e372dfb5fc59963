"""CSV ingestion: parsing, schema inference, and typed column building.

The reader is RFC-4180 (quoted fields, embedded delimiters/newlines, doubled
quotes) with a configurable delimiter. Schema inference scans every cell of
every column, not a prefix sample, so the inferred type is independent of row
order. Cells matching a null token land as nulls; in lenient mode (the
default) unparsable cells also become nulls and are counted as coercion
warnings, so a well-formed file always ingests. There is no input size limit.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

from .errors import CoercionError, CsvSyntaxError, EmptyInput
from .schema import ColumnSpec, ColumnType, TableSchema, promote
from .store import ColumnData, Table
from .years import AcademicYearId, as_year

#: Tokens treated as missing values. "PrivacySuppressed" is how College
#: Scorecard files redact small-cohort numbers inside otherwise numeric
#: columns.
DEFAULT_NULL_TOKENS = frozenset({"", "NULL", "null", "PrivacySuppressed"})

_BOOL_TOKENS = {"true": True, "false": False}
_INT64_MIN = -(2**63)
_INT64_MAX = 2**63 - 1

# Quoted fields may be arbitrarily large; the stdlib default (128 KiB) is too
# small for wide survey files.
_FIELD_LIMIT = 2**30


@dataclass
class RawCsv:
    """Parsed but untyped CSV: header names plus string-cell rows."""

    header: list[str]
    rows: list[list[str]]


@dataclass
class IngestReport:
    table_name: str
    row_count: int
    column_count: int
    null_cells: int
    coercion_warnings: int
    elapsed_ms: int

    def to_json_dict(self) -> dict:
        return {
            "table_name": self.table_name,
            "row_count": self.row_count,
            "column_count": self.column_count,
            "null_cells": self.null_cells,
            "coercion_warnings": self.coercion_warnings,
            "elapsed_ms": self.elapsed_ms,
        }


def _decode(source: "bytes | str | IO[bytes] | IO[str]") -> str:
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, (bytes, bytearray)):
        try:
            source = bytes(source).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CsvSyntaxError(f"input is not valid UTF-8: {exc}") from None
    if source.startswith("﻿"):
        source = source[1:]
    return source


def _dedupe_header(raw_names: list[str]) -> list[str]:
    """Make header names non-empty and unique by suffixing ``_2``, ``_3``, ..."""
    names: list[str] = []
    seen: set[str] = set()
    for i, name in enumerate(raw_names):
        base = name if name else f"column_{i + 1}"
        candidate = base
        k = 1
        while candidate in seen:
            k += 1
            candidate = f"{base}_{k}"
        names.append(candidate)
        seen.add(candidate)
    return names


def read_csv(
    source: "bytes | str | IO[bytes] | IO[str]",
    *,
    delimiter: str = ",",
    strict: bool = False,
) -> RawCsv:
    """Parse UTF-8 CSV (an optional leading BOM is stripped).

    The first record is the header. Blank records are skipped in both modes.
    Rows whose cell count differs from the header are an error in strict
    mode; in lenient mode short rows are padded with empty cells (which
    ingest as nulls) and long rows are truncated.
    """
    text = _decode(source)
    csv.field_size_limit(_FIELD_LIMIT)
    reader = csv.reader(io.StringIO(text, newline=""), delimiter=delimiter, strict=True)
    try:
        records = [rec for rec in reader if rec]
    except csv.Error as exc:
        raise CsvSyntaxError(f"malformed CSV near line {reader.line_num}: {exc}") from None
    if not records:
        raise EmptyInput("CSV source has no header row")

    header = _dedupe_header(records[0])
    width = len(header)
    rows: list[list[str]] = []
    for i, rec in enumerate(records[1:], start=1):
        if len(rec) != width:
            if strict:
                raise CsvSyntaxError(
                    f"data row {i} has {len(rec)} cells, expected {width}"
                )
            rec = rec[:width] + [""] * (width - len(rec))
        rows.append(rec)
    return RawCsv(header, rows)


def detect_cell_type(cell: str) -> ColumnType:
    """Type of a single non-null cell.

    Integer literals that overflow 64 bits count as FLOAT64; only literal
    true/false (any case) count as BOOL, so 0/1 flag columns stay INT64.
    """
    try:
        value = int(cell)
    except ValueError:
        pass
    else:
        if _INT64_MIN <= value <= _INT64_MAX:
            return ColumnType.INT64
        return ColumnType.FLOAT64
    try:
        float(cell)
    except ValueError:
        pass
    else:
        return ColumnType.FLOAT64
    if cell.lower() in _BOOL_TOKENS:
        return ColumnType.BOOL
    return ColumnType.STRING


def infer_column_type(
    cells: Iterable[str],
    *,
    null_tokens: frozenset[str] = DEFAULT_NULL_TOKENS,
) -> ColumnType:
    """Least upper bound of the detected cell types, ignoring null tokens.

    An all-null or empty column falls back to STRING. STRING is absorbing,
    so the scan may stop early once it is reached; the result is still
    order-independent.
    """
    current: ColumnType | None = None
    for cell in cells:
        if cell in null_tokens:
            continue
        detected = detect_cell_type(cell)
        current = detected if current is None else promote(current, detected)
        if current is ColumnType.STRING:
            break
    return current if current is not None else ColumnType.STRING


def _columns_of(raw: RawCsv) -> list[tuple[str, ...]]:
    if not raw.rows:
        return [() for _ in raw.header]
    return list(zip(*raw.rows))


def infer_schema(
    raw: RawCsv,
    *,
    null_tokens: frozenset[str] = DEFAULT_NULL_TOKENS,
) -> TableSchema:
    specs = tuple(
        ColumnSpec(name, infer_column_type(cells, null_tokens=null_tokens))
        for name, cells in zip(raw.header, _columns_of(raw))
    )
    return TableSchema(specs)


def coerce_value(
    cell: str,
    target: ColumnType,
    *,
    strict: bool = False,
    null_tokens: frozenset[str] = DEFAULT_NULL_TOKENS,
):
    """Convert one cell to ``target``; null tokens become None.

    Lenient mode maps unparsable cells to None (the caller counts them as
    coercion warnings); strict mode raises CoercionError instead.
    """
    if cell in null_tokens:
        return None
    if target is ColumnType.STRING:
        return cell
    if target is ColumnType.INT64:
        try:
            value = int(cell)
            if _INT64_MIN <= value <= _INT64_MAX:
                return value
        except ValueError:
            pass
    elif target is ColumnType.FLOAT64:
        try:
            return float(cell)
        except ValueError:
            pass
    elif target is ColumnType.BOOL:
        flag = _BOOL_TOKENS.get(cell.lower())
        if flag is not None:
            return flag
    if strict:
        raise CoercionError(f"cannot parse {cell!r} as {target}")
    return None


_SENTINEL = "0"  # stand-in for null cells during bulk numeric conversion


def _coerce_numeric(
    name: str,
    dtype: ColumnType,
    cells: tuple[str, ...],
    strict: bool,
    null_tokens: frozenset[str],
) -> tuple[np.ndarray, np.ndarray, int]:
    np_dtype = np.int64 if dtype is ColumnType.INT64 else np.float64
    mask = np.zeros(len(cells), dtype=bool)
    cleaned = []
    for i, cell in enumerate(cells):
        if cell in null_tokens:
            mask[i] = True
            cleaned.append(_SENTINEL)
        else:
            cleaned.append(cell)
    try:
        # numpy parses str->int64/float64 with Python literal semantics;
        # one bad cell falls back to the per-cell path below.
        return np.asarray(cleaned, dtype=np_dtype), mask, 0
    except (ValueError, OverflowError):
        pass

    values = np.zeros(len(cells), dtype=np_dtype)
    warnings = 0
    for i, cell in enumerate(cells):
        if mask[i]:
            continue
        try:
            value = coerce_value(cell, dtype, strict=strict, null_tokens=null_tokens)
        except CoercionError as exc:
            raise CoercionError(f"column {name!r}, data row {i + 1}: {exc}") from None
        if value is None:
            mask[i] = True
            warnings += 1
        else:
            values[i] = value
    return values, mask, warnings


def _coerce_column(
    spec: ColumnSpec,
    cells: tuple[str, ...],
    strict: bool,
    null_tokens: frozenset[str],
) -> tuple[ColumnData, int]:
    warnings = 0
    if spec.dtype is ColumnType.STRING:
        mask = np.zeros(len(cells), dtype=bool)
        values: "list[str] | np.ndarray" = []
        for i, cell in enumerate(cells):
            if cell in null_tokens:
                mask[i] = True
                values.append("")
            else:
                values.append(cell)
    elif spec.dtype is ColumnType.BOOL:
        mask = np.zeros(len(cells), dtype=bool)
        values = np.zeros(len(cells), dtype=bool)
        for i, cell in enumerate(cells):
            if cell in null_tokens:
                mask[i] = True
                continue
            flag = _BOOL_TOKENS.get(cell.lower())
            if flag is None:
                if strict:
                    raise CoercionError(
                        f"column {spec.name!r}, data row {i + 1}: "
                        f"cannot parse {cell!r} as BOOL"
                    )
                mask[i] = True
                warnings += 1
            else:
                values[i] = flag
    else:
        values, mask, warnings = _coerce_numeric(
            spec.name, spec.dtype, cells, strict, null_tokens
        )
    return ColumnData(spec.name, spec.dtype, values, mask), warnings


def build_table(
    raw: RawCsv,
    schema: TableSchema,
    year: "AcademicYearId | str",
    *,
    strict: bool = False,
    null_tokens: frozenset[str] = DEFAULT_NULL_TOKENS,
) -> tuple[Table, IngestReport]:
    """Materialize typed columns with null masks and an ingest report."""
    started = time.perf_counter()
    year = as_year(year)
    if len(schema) != len(raw.header):
        raise ValueError(
            f"schema has {len(schema)} columns, header has {len(raw.header)}"
        )
    columns = []
    null_cells = 0
    warnings = 0
    for spec, cells in zip(schema, _columns_of(raw)):
        column, col_warnings = _coerce_column(spec, cells, strict, null_tokens)
        columns.append(column)
        null_cells += column.null_count
        warnings += col_warnings
    table = Table(year, schema, columns, len(raw.rows))
    report = IngestReport(
        table_name=year.label,
        row_count=table.row_count,
        column_count=table.column_count,
        null_cells=null_cells,
        coercion_warnings=warnings,
        elapsed_ms=int((time.perf_counter() - started) * 1000),
    )
    return table, report


def ingest_csv(
    source: "bytes | str | IO[bytes] | IO[str]",
    year: "AcademicYearId | str",
    *,
    delimiter: str = ",",
    strict: bool = False,
    null_tokens: frozenset[str] = DEFAULT_NULL_TOKENS,
) -> tuple[Table, IngestReport]:
    """Full pipeline: parse, infer the schema, and build the typed table."""
    started = time.perf_counter()
    raw = read_csv(source, delimiter=delimiter, strict=strict)
    schema = infer_schema(raw, null_tokens=null_tokens)
    table, report = build_table(
        raw, schema, year, strict=strict, null_tokens=null_tokens
    )
    report.elapsed_ms = int((time.perf_counter() - started) * 1000)
    return table, report
