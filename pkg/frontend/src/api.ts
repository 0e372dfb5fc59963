/**
 * Typed client for the enrollment-analytics HTTP API.
 *
 * Error responses carry `{code, message}`; those become ApiRequestError so
 * callers can show the server's human-readable text and branch on the code.
 * Anything else (network down, refused connection) surfaces as the
 * underlying fetch rejection.
 */

export interface DatasetEntry {
  year: string;
  row_count: number;
  column_count: number;
}

export interface YearTotal {
  year: string;
  total: number;
  non_null_rows: number;
  null_rows: number;
}

export interface CompareResponse {
  column: string;
  first: YearTotal;
  second: YearTotal;
  delta: number;
  pct_change: number | null;
}

export interface TrendPoint {
  year: string;
  total: number;
  non_null_rows: number;
}

export interface TrendResponse {
  column: string;
  points: TrendPoint[];
}

export interface IngestReport {
  table_name: string;
  row_count: number;
  column_count: number;
  null_cells: number;
  coercion_warnings: number;
  elapsed_ms: number;
}

export class ApiRequestError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(message: string, code: string, status: number) {
    super(message);
    this.name = "ApiRequestError";
    this.code = code;
    this.status = status;
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class PabedClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl = "", fetchFn: FetchLike = (...args) => fetch(...args)) {
    // trailing slash would double up when paths are appended
    this.base = baseUrl.replace(/\/$/, "");
    this.fetchFn = fetchFn;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(`${this.base}${path}`, init);
    if (!resp.ok) {
      let code = "INTERNAL";
      let message = `request failed with status ${resp.status}`;
      try {
        const body = (await resp.json()) as { code?: string; message?: string };
        if (body.code) code = body.code;
        if (body.message) message = body.message;
      } catch {
        // non-JSON error body; keep the fallback text
      }
      throw new ApiRequestError(message, code, resp.status);
    }
    return (await resp.json()) as T;
  }

  listDatasets(): Promise<DatasetEntry[]> {
    return this.request<DatasetEntry[]>("/api/v1/datasets");
  }

  compare(year1: string, year2: string, column?: string): Promise<CompareResponse> {
    const params = new URLSearchParams({ year1, year2 });
    if (column) params.set("column", column);
    return this.request<CompareResponse>(`/api/v1/compare?${params}`);
  }

  trend(from: string, to: string, column?: string): Promise<TrendResponse> {
    const params = new URLSearchParams({ from, to });
    if (column) params.set("column", column);
    return this.request<TrendResponse>(`/api/v1/trend?${params}`);
  }

  /** Upload one year's CSV; used by tests and scripted seeding, not the UI. */
  upload(year: string, csv: string, token?: string): Promise<IngestReport> {
    const headers: Record<string, string> = { "content-type": "text/csv" };
    if (token) headers["authorization"] = `Bearer ${token}`;
    return this.request<IngestReport>(`/api/v1/datasets/${year}`, {
      method: "POST",
      headers,
      body: csv,
    });
  }
}
