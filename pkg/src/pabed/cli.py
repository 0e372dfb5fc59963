"""Command-line interface: ingest, list, schema, compare, trend, serve.

JSON output (``--format json``) is structurally identical to the HTTP API
bodies, so scripts can swap between the two without reshaping. Errors print
``error[CODE]: message`` on stderr and exit 1; bad flags exit 2 with usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import MalformedYear, PabedError
from .ingest import ingest_csv
from .query import DEFAULT_MEASURE, compare_years, trend_series
from .service import ServerConfig, serve
from .store import Catalog
from .years import parse_academic_year

_CATALOG_ENV = "PABED_CATALOG"
_TOKEN_ENV = "PABED_TOKEN"
_DEFAULT_CATALOG = "catalog"


def _catalog_root(args) -> Path:
    return Path(args.catalog or os.environ.get(_CATALOG_ENV) or _DEFAULT_CATALOG)


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def _print_aligned(rows: "list[tuple[str, ...]]") -> None:
    if not rows:
        return
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())


def _resolve_year(args) -> str:
    if args.year:
        return args.year
    stem = Path(args.file).stem
    try:
        return parse_academic_year(stem).label
    except MalformedYear:
        raise MalformedYear(
            f"cannot infer an academic year from file name {Path(args.file).name!r}; "
            f"pass --year YYYY_YY"
        ) from None


def cmd_ingest(args) -> int:
    year = _resolve_year(args)
    data = Path(args.file).read_bytes()
    table, report = ingest_csv(
        data, year, delimiter=args.delimiter, strict=args.strict
    )
    catalog = Catalog(_catalog_root(args))
    catalog.register(table, persist=True)
    if args.format == "json":
        _print_json(report.to_json_dict())
    else:
        _print_aligned(
            [(k, str(v)) for k, v in report.to_json_dict().items()]
        )
    return 0


def cmd_list(args) -> int:
    catalog = Catalog.open(_catalog_root(args))
    entries = [
        {
            "year": year.label,
            "row_count": table.row_count,
            "column_count": table.column_count,
        }
        for year, table in catalog.entries()
    ]
    if args.format == "json":
        _print_json(entries)
    else:
        _print_aligned(
            [(e["year"], str(e["row_count"]), str(e["column_count"])) for e in entries]
        )
    return 0


def cmd_schema(args) -> int:
    catalog = Catalog.open(_catalog_root(args))
    table = catalog.lookup(args.year)
    payload = {
        "year": table.year.label,
        "columns": [
            {"name": c.name, "type": c.dtype.value, "null_count": c.null_count}
            for c in table.columns
        ],
    }
    if args.format == "json":
        _print_json(payload)
    else:
        rows = [("column", "type", "nulls")]
        rows += [
            (c["name"], c["type"], str(c["null_count"])) for c in payload["columns"]
        ]
        _print_aligned(rows)
    return 0


def cmd_compare(args) -> int:
    catalog = Catalog.open(_catalog_root(args))
    result = compare_years(catalog, args.year1, args.year2, args.column)
    if args.format == "json":
        _print_json(result.to_json_dict())
        return 0
    pct = "n/a" if result.pct_change is None else f"{result.pct_change}%"
    _print_aligned(
        [
            ("column", result.column),
            (
                result.first.year.label,
                f"total={result.first.total} non_null={result.first.non_null_rows}",
            ),
            (
                result.second.year.label,
                f"total={result.second.total} non_null={result.second.non_null_rows}",
            ),
            ("delta", str(result.delta)),
            ("pct_change", pct),
        ]
    )
    return 0


def cmd_trend(args) -> int:
    catalog = Catalog.open(_catalog_root(args))
    series = trend_series(catalog, args.from_year, args.to_year, args.column)
    if args.format == "json":
        _print_json(series.to_json_dict())
    elif args.format == "csv":
        print("year,total,non_null_rows")
        for p in series.points:
            print(f"{p.year.label},{p.total},{p.non_null_rows}")
    else:
        rows = [("year", "total", "non_null_rows")]
        rows += [
            (p.year.label, str(p.total), str(p.non_null_rows)) for p in series.points
        ]
        _print_aligned(rows)
    return 0


def cmd_serve(args) -> int:
    config = ServerConfig(
        host=args.host,
        port=args.port,
        catalog_root=_catalog_root(args),
        auth_token=args.token or os.environ.get(_TOKEN_ENV) or None,
        cors_origins=tuple(args.cors_origin or ()),
        static_dir=args.static,
    )
    serve(config)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pabed",
        description="Education-analytics stack: ingest year-keyed CSVs and "
        "query enrollment totals, comparisons, and trends.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument(
            "--catalog",
            help=f"catalog directory (default: ${_CATALOG_ENV} or ./{_DEFAULT_CATALOG})",
        )

    p = sub.add_parser("ingest", help="ingest a CSV file as one academic year")
    p.add_argument("file", help="CSV file; the year is read from the file "
                   "stem (e.g. 1996_97.csv) unless --year is given")
    p.add_argument("--year", help="academic year label, e.g. 1996_97")
    p.add_argument("--strict", action="store_true",
                   help="fail on unparsable cells instead of nulling them")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--format", choices=["table", "json"], default="table")
    add_common(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("list", help="list registered academic years")
    p.add_argument("--format", choices=["table", "json"], default="table")
    add_common(p)
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("schema", help="show the inferred schema of one year")
    p.add_argument("year")
    p.add_argument("--format", choices=["table", "json"], default="table")
    add_common(p)
    p.set_defaults(func=cmd_schema)

    p = sub.add_parser("compare", help="compare a column total across two years")
    p.add_argument("--year1", required=True)
    p.add_argument("--year2", required=True)
    p.add_argument("--column", default=DEFAULT_MEASURE)
    p.add_argument("--format", choices=["table", "json"], default="table")
    add_common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("trend", help="per-year totals over a year range")
    p.add_argument("--from", dest="from_year", required=True, metavar="FROM")
    p.add_argument("--to", dest="to_year", required=True, metavar="TO")
    p.add_argument("--column", default=DEFAULT_MEASURE)
    p.add_argument("--format", choices=["table", "json", "csv"], default="table")
    add_common(p)
    p.set_defaults(func=cmd_trend)

    p = sub.add_parser("serve", help="run the HTTP API (and dashboard, if built)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--token", help=f"bearer token for uploads (default: ${_TOKEN_ENV})")
    p.add_argument("--static", help="directory of dashboard assets to serve at /")
    p.add_argument("--cors-origin", action="append",
                   help="allowed CORS origin; repeatable")
    add_common(p)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: "list[str] | None" = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PabedError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error[IO_ERROR]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
