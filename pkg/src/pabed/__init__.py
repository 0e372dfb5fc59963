"""PABED: a self-contained education-analytics stack.

Ingests year-keyed institutional CSV files into an embedded columnar store
and answers enrollment aggregation queries (two-year comparison, multi-year
trend, weighted group shares) through a Python API, a CLI, and an HTTP JSON
service backing the browser dashboard.
"""

from . import errors
from .ingest import (
    DEFAULT_NULL_TOKENS,
    IngestReport,
    RawCsv,
    build_table,
    coerce_value,
    detect_cell_type,
    infer_column_type,
    infer_schema,
    ingest_csv,
    read_csv,
)
from .query import (
    DEFAULT_MEASURE,
    AggregateResult,
    ComparisonResult,
    TrendPoint,
    TrendSeries,
    compare_years,
    compensated_sum,
    sum_column,
    trend_series,
    weighted_mean,
)
from .schema import ColumnSpec, ColumnType, TableSchema, promote
from .service import ServerConfig, create_app
from .snapshot import read_snapshot, write_snapshot
from .store import Catalog, ColumnData, Table
from .years import AcademicYearId, parse_academic_year

__version__ = "0.1.0"

__all__ = [
    "AcademicYearId",
    "AggregateResult",
    "Catalog",
    "ColumnData",
    "ColumnSpec",
    "ColumnType",
    "ComparisonResult",
    "DEFAULT_MEASURE",
    "DEFAULT_NULL_TOKENS",
    "IngestReport",
    "RawCsv",
    "ServerConfig",
    "Table",
    "TableSchema",
    "TrendPoint",
    "TrendSeries",
    "build_table",
    "coerce_value",
    "compare_years",
    "compensated_sum",
    "create_app",
    "detect_cell_type",
    "errors",
    "infer_column_type",
    "infer_schema",
    "ingest_csv",
    "parse_academic_year",
    "promote",
    "read_csv",
    "read_snapshot",
    "sum_column",
    "trend_series",
    "weighted_mean",
    "write_snapshot",
]
