"""HTTP JSON API over the catalog and query layer.

Four endpoints under /api/v1: dataset listing, CSV upload, two-year compare,
and trend series. Every error response body is ``{"code": ..., "message":
...}`` with a fixed code-to-status mapping, so clients can branch on the code
and humans can read the message. When an auth token is configured, mutating
endpoints require ``Authorization: Bearer <token>``; reads stay open.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse

from .errors import (
    MissingParameter,
    PabedError,
    PayloadTooLarge,
    Unauthorized,
)
from .ingest import ingest_csv
from .query import DEFAULT_MEASURE, compare_years, trend_series
from .store import Catalog
from .years import as_year

STATUS_BY_CODE = {
    "MISSING_PARAMETER": 400,
    "MALFORMED_YEAR": 400,
    "CSV_SYNTAX": 400,
    "UNAUTHORIZED": 401,
    "UNKNOWN_YEAR": 404,
    "UNKNOWN_COLUMN": 404,
    "PAYLOAD_TOO_LARGE": 413,
    "TYPE_MISMATCH": 422,
    "INTERNAL": 500,
}


@dataclass
class ServerConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    catalog_root: "Path | str | None" = None
    auth_token: "str | None" = None
    max_upload_bytes: int = 4 * 1024**3
    cors_origins: tuple[str, ...] = ()
    static_dir: "Path | str | None" = None

    def __post_init__(self) -> None:
        if self.max_upload_bytes <= 0:
            raise ValueError("max_upload_bytes must be positive")

    @property
    def bind_address(self) -> str:
        return f"{self.host}:{self.port}"


def _error_response(exc: PabedError) -> JSONResponse:
    status = STATUS_BY_CODE.get(exc.code, 500)
    return JSONResponse(
        status_code=status, content={"code": exc.code, "message": str(exc)}
    )


def _require(value: "str | None", name: str) -> str:
    # Empty strings count as missing: they are what an empty form field sends.
    if value is None or value == "":
        raise MissingParameter(f"missing required parameter: {name}")
    return value


def create_app(catalog: Catalog, config: "ServerConfig | None" = None) -> FastAPI:
    """Build the FastAPI application serving ``catalog``."""
    config = config or ServerConfig()
    app = FastAPI(title="PABED", version="0.1.0", docs_url=None, redoc_url=None)

    if config.cors_origins:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(config.cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(PabedError)
    async def handle_domain_error(request: Request, exc: PabedError):
        return _error_response(exc)

    @app.exception_handler(Exception)
    async def handle_internal_error(request: Request, exc: Exception):
        return JSONResponse(
            status_code=500,
            content={"code": "INTERNAL", "message": "internal server error"},
        )

    def check_auth(request: Request) -> None:
        if config.auth_token is None:
            return
        header = request.headers.get("authorization", "")
        if not secrets.compare_digest(header, f"Bearer {config.auth_token}"):
            raise Unauthorized("missing or invalid bearer token")

    @app.get("/api/v1/datasets")
    async def list_datasets():
        return [
            {
                "year": year.label,
                "row_count": table.row_count,
                "column_count": table.column_count,
            }
            for year, table in catalog.entries()
        ]

    @app.post("/api/v1/datasets/{year}", status_code=201)
    async def upload_dataset(year: str, request: Request):
        check_auth(request)
        declared = request.headers.get("content-length")
        if declared is not None and declared.isdigit():
            if int(declared) > config.max_upload_bytes:
                raise PayloadTooLarge(
                    f"upload exceeds {config.max_upload_bytes} bytes"
                )
        body = await request.body()
        if len(body) > config.max_upload_bytes:
            raise PayloadTooLarge(f"upload exceeds {config.max_upload_bytes} bytes")
        year_id = as_year(year)
        table, report = ingest_csv(body, year_id)
        catalog.register(table)
        return report.to_json_dict()

    @app.get("/api/v1/compare")
    async def compare(
        year1: "str | None" = None,
        year2: "str | None" = None,
        column: "str | None" = None,
    ):
        result = compare_years(
            catalog,
            _require(year1, "year1"),
            _require(year2, "year2"),
            column or DEFAULT_MEASURE,
        )
        return result.to_json_dict()

    @app.get("/api/v1/trend")
    async def trend(
        from_year: "str | None" = Query(None, alias="from"),
        to_year: "str | None" = Query(None, alias="to"),
        column: "str | None" = None,
    ):
        series = trend_series(
            catalog,
            _require(from_year, "from"),
            _require(to_year, "to"),
            column or DEFAULT_MEASURE,
        )
        return series.to_json_dict()

    @app.get("/api/v1/schema/{year}")
    async def table_schema(year: str):
        table = catalog.lookup(as_year(year))
        return {
            "year": table.year.label,
            "columns": [
                {
                    "name": col.name,
                    "type": col.dtype.value,
                    "null_count": col.null_count,
                }
                for col in table.columns
            ],
        }

    if config.static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount(
            "/",
            StaticFiles(directory=str(config.static_dir), html=True),
            name="dashboard",
        )

    return app


def serve(config: ServerConfig) -> None:
    """Open the catalog, build the app, and block serving HTTP."""
    import uvicorn

    catalog = Catalog.open(config.catalog_root or "catalog")
    app = create_app(catalog, config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
