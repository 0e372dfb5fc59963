import json
import math

import pytest
from fastapi.testclient import TestClient

from pabed.ingest import ingest_csv
from pabed.query import compare_years, trend_series
from pabed.service import ServerConfig, create_app
from pabed.store import Catalog

from conftest import EIGHT_YEARS
from gen import scorecard_csv


@pytest.fixture()
def catalog(fixture_catalog):
    return fixture_catalog


@pytest.fixture()
def client(catalog):
    app = create_app(catalog, ServerConfig())
    return TestClient(app)


def _error(resp):
    body = resp.json()
    assert set(body) == {"code", "message"}
    return body["code"]


# --- datasets -------------------------------------------------------------

def test_list_datasets(client):
    resp = client.get("/api/v1/datasets")
    assert resp.status_code == 200
    body = resp.json()
    assert [d["year"] for d in body] == EIGHT_YEARS
    for entry in body:
        assert set(entry) == {"year", "row_count", "column_count"}
        assert entry["row_count"] == 350


def test_list_datasets_empty():
    app = create_app(Catalog(), ServerConfig())
    resp = TestClient(app).get("/api/v1/datasets")
    assert resp.json() == []


def test_upload_registers_year(catalog, client):
    body = "UNITID,UGDS\n1,100\n2,200\n"
    resp = client.post(
        "/api/v1/datasets/2004_05",
        content=body.encode(),
        headers={"content-type": "text/csv"},
    )
    assert resp.status_code == 201
    report = resp.json()
    assert report["table_name"] == "2004_05"
    assert report["row_count"] == 2
    assert report["column_count"] == 2
    assert report["null_cells"] == 0
    assert "elapsed_ms" in report
    assert catalog.lookup("2004_05").row_count == 2


def test_upload_malformed_year(client):
    resp = client.post("/api/v1/datasets/96-97", content=b"UGDS\n1\n")
    assert resp.status_code == 400
    assert _error(resp) == "MALFORMED_YEAR"


def test_upload_csv_syntax_error(client):
    resp = client.post("/api/v1/datasets/2004_05", content=b'UGDS\n"unclosed\n')
    assert resp.status_code == 400
    assert _error(resp) == "CSV_SYNTAX"


def test_upload_empty_body(client):
    resp = client.post("/api/v1/datasets/2004_05", content=b"")
    assert resp.status_code == 400
    assert _error(resp) == "CSV_SYNTAX"


def test_upload_over_one_megabyte(client):
    text = scorecard_csv(seed=42, rows=18_000)
    assert len(text.encode()) > 1_000_000
    resp = client.post("/api/v1/datasets/2005_06", content=text.encode())
    assert resp.status_code == 201
    assert resp.json()["row_count"] == 18_000


def test_upload_too_large_413(catalog):
    app = create_app(catalog, ServerConfig(max_upload_bytes=64))
    client = TestClient(app)
    resp = client.post("/api/v1/datasets/2004_05", content=b"UGDS\n" + b"1\n" * 100)
    assert resp.status_code == 413
    assert _error(resp) == "PAYLOAD_TOO_LARGE"


def test_upload_replaces_existing_year(catalog, client):
    first = client.post("/api/v1/datasets/2004_05", content=b"UGDS\n1\n")
    assert first.status_code == 201
    second = client.post("/api/v1/datasets/2004_05", content=b"UGDS\n2\n3\n")
    assert second.status_code == 201
    assert catalog.lookup("2004_05").row_count == 2


# --- auth -----------------------------------------------------------------

def test_upload_requires_token_when_configured(catalog):
    app = create_app(catalog, ServerConfig(auth_token="sekrit"))
    client = TestClient(app)

    resp = client.post("/api/v1/datasets/2004_05", content=b"UGDS\n1\n")
    assert resp.status_code == 401
    assert _error(resp) == "UNAUTHORIZED"

    resp = client.post(
        "/api/v1/datasets/2004_05",
        content=b"UGDS\n1\n",
        headers={"authorization": "Bearer wrong"},
    )
    assert resp.status_code == 401

    resp = client.post(
        "/api/v1/datasets/2004_05",
        content=b"UGDS\n1\n",
        headers={"authorization": "Bearer sekrit"},
    )
    assert resp.status_code == 201


def test_reads_never_require_token(catalog):
    app = create_app(catalog, ServerConfig(auth_token="sekrit"))
    client = TestClient(app)
    assert client.get("/api/v1/datasets").status_code == 200
    resp = client.get("/api/v1/compare?year1=1996_97&year2=1997_98")
    assert resp.status_code == 200


# --- compare ----------------------------------------------------------------

def test_compare_matches_library_result(catalog, client):
    resp = client.get("/api/v1/compare?year1=1996_97&year2=2003_04")
    assert resp.status_code == 200
    want = compare_years(catalog, "1996_97", "2003_04").to_json_dict()
    assert resp.json() == want


def test_compare_missing_year2(client):
    resp = client.get("/api/v1/compare?year1=1996_97")
    assert resp.status_code == 400
    assert _error(resp) == "MISSING_PARAMETER"


def test_compare_missing_year1(client):
    resp = client.get("/api/v1/compare?year2=1997_98")
    assert resp.status_code == 400
    assert _error(resp) == "MISSING_PARAMETER"


def test_compare_missing_both(client):
    resp = client.get("/api/v1/compare")
    assert resp.status_code == 400
    assert _error(resp) == "MISSING_PARAMETER"


def test_compare_empty_param_counts_as_missing(client):
    resp = client.get("/api/v1/compare?year1=1996_97&year2=")
    assert resp.status_code == 400
    assert _error(resp) == "MISSING_PARAMETER"


def test_compare_malformed_year(client):
    resp = client.get("/api/v1/compare?year1=1996-97&year2=1997_98")
    assert resp.status_code == 400
    assert _error(resp) == "MALFORMED_YEAR"


def test_compare_unknown_year(client):
    resp = client.get("/api/v1/compare?year1=1980_81&year2=1997_98")
    assert resp.status_code == 404
    assert _error(resp) == "UNKNOWN_YEAR"


def test_compare_unknown_column(client):
    resp = client.get(
        "/api/v1/compare?year1=1996_97&year2=1997_98&column=NO_SUCH"
    )
    assert resp.status_code == 404
    assert _error(resp) == "UNKNOWN_COLUMN"


def test_compare_type_mismatch(client):
    resp = client.get(
        "/api/v1/compare?year1=1996_97&year2=1997_98&column=INSTNM"
    )
    assert resp.status_code == 422
    assert _error(resp) == "TYPE_MISMATCH"


def test_compare_custom_column(catalog, client):
    resp = client.get(
        "/api/v1/compare?year1=1996_97&year2=1997_98&column=UGDS_WHITE"
    )
    assert resp.status_code == 200
    assert resp.json()["column"] == "UGDS_WHITE"


def test_float_totals_survive_json_round_trip(catalog, client):
    want = compare_years(catalog, "1996_97", "2003_04")
    got = client.get("/api/v1/compare?year1=1996_97&year2=2003_04").json()
    # exact equality: json round-trips IEEE doubles losslessly via repr
    assert got["first"]["total"] == want.first.total
    assert got["second"]["total"] == want.second.total
    assert got["delta"] == want.delta
    assert math.isclose(got["pct_change"], want.pct_change, rel_tol=0, abs_tol=0)


# --- trend ------------------------------------------------------------------

def test_trend_endpoint(catalog, client):
    resp = client.get("/api/v1/trend?from=1996_97&to=2003_04")
    assert resp.status_code == 200
    want = trend_series(catalog, "1996_97", "2003_04").to_json_dict()
    assert resp.json() == want
    assert len(resp.json()["points"]) == 8


def test_trend_missing_params(client):
    assert _error(client.get("/api/v1/trend?from=1996_97")) == "MISSING_PARAMETER"
    assert _error(client.get("/api/v1/trend?to=1996_97")) == "MISSING_PARAMETER"
    assert _error(client.get("/api/v1/trend")) == "MISSING_PARAMETER"


def test_trend_reversed_range(client):
    resp = client.get("/api/v1/trend?from=2003_04&to=1996_97")
    assert resp.status_code == 400
    assert _error(resp) == "MALFORMED_YEAR"


def test_trend_empty_window(client):
    resp = client.get("/api/v1/trend?from=2050_51&to=2060_61")
    assert resp.status_code == 404
    assert _error(resp) == "UNKNOWN_YEAR"


def test_trend_custom_column(client):
    resp = client.get("/api/v1/trend?from=1996_97&to=1998_99&column=UGDS_BLACK")
    assert resp.status_code == 200
    assert resp.json()["column"] == "UGDS_BLACK"


# --- schema -----------------------------------------------------------------

def test_schema_endpoint(client):
    resp = client.get("/api/v1/schema/1996_97")
    assert resp.status_code == 200
    body = resp.json()
    assert body["year"] == "1996_97"
    assert {"name", "type", "null_count"} <= set(body["columns"][0])
    by_name = {c["name"]: c["type"] for c in body["columns"]}
    assert by_name["UGDS"] in {"int64", "float64"}
    assert by_name["INSTNM"] == "string"


def test_schema_unknown_year(client):
    resp = client.get("/api/v1/schema/2050_51")
    assert resp.status_code == 404
    assert _error(resp) == "UNKNOWN_YEAR"


def test_schema_malformed_year(client):
    resp = client.get("/api/v1/schema/banana")
    assert resp.status_code == 400
    assert _error(resp) == "MALFORMED_YEAR"


# --- failure shape -----------------------------------------------------------

def test_unexpected_exception_maps_to_500(catalog, monkeypatch):
    app = create_app(catalog, ServerConfig())
    client = TestClient(app, raise_server_exceptions=False)

    def boom(*args, **kwargs):
        raise RuntimeError("injected")

    monkeypatch.setattr("pabed.service.compare_years", boom)
    resp = client.get("/api/v1/compare?year1=1996_97&year2=1997_98")
    assert resp.status_code == 500
    assert _error(resp) == "INTERNAL"


def test_error_bodies_are_json_everywhere(client):
    for url in [
        "/api/v1/compare",
        "/api/v1/trend",
        "/api/v1/schema/nope",
        "/api/v1/compare?year1=1800_01&year2=1801_02",
    ]:
        resp = client.get(url)
        assert resp.headers["content-type"].startswith("application/json")
        json.loads(resp.content)  # must not raise


def test_upload_then_query_round_trip(catalog, client):
    client.post("/api/v1/datasets/2004_05", content=b"UGDS\n10\n30\n")
    resp = client.get("/api/v1/compare?year1=2003_04&year2=2004_05")
    assert resp.status_code == 200
    assert resp.json()["second"]["total"] == 40.0


def test_server_config_rejects_nonpositive_limit():
    with pytest.raises(ValueError):
        ServerConfig(max_upload_bytes=0)
