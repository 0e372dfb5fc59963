/**
 * Form/submission state machine, kept free of DOM types so it can be tested
 * headless. The page binds it to real elements in app.ts.
 */

import {
  ApiRequestError,
  CompareResponse,
  PabedClient,
  TrendResponse,
} from "./api.js";
import { buildChartModel, renderLineChart } from "./chart.js";
import { formatDelta, formatPctChange, formatTotal } from "./format.js";
import { FormValues, orderYears, validateInputs } from "./validate.js";

/** Everything the result panel displays, already formatted for display. */
export interface ResultPanel {
  column: string;
  firstYear: string;
  firstTotal: string;
  secondYear: string;
  secondTotal: string;
  delta: string;
  pctChange: string;
  chartSvg: string;
}

export interface DashboardView {
  setCatalogStatus(text: string): void;
  setYearOptions(years: string[]): void;
  setValidationMessage(text: string | null): void;
  setErrorBanner(text: string | null): void;
  setSubmitting(submitting: boolean): void;
  renderResult(panel: ResultPanel): void;
}

export function buildResultPanel(
  cmp: CompareResponse,
  trend: TrendResponse,
): ResultPanel {
  const model = buildChartModel(
    cmp.column,
    trend.points.map((p) => ({ year: p.year, total: p.total })),
    { year: cmp.first.year, total: cmp.first.total },
    { year: cmp.second.year, total: cmp.second.total },
  );
  return {
    column: cmp.column,
    firstYear: cmp.first.year,
    firstTotal: formatTotal(cmp.first.total),
    secondYear: cmp.second.year,
    secondTotal: formatTotal(cmp.second.total),
    delta: formatDelta(cmp.delta),
    pctChange: formatPctChange(cmp.pct_change),
    chartSvg: renderLineChart(model),
  };
}

export class DashboardController {
  private seq = 0;

  constructor(
    private readonly client: PabedClient,
    private readonly view: DashboardView,
  ) {}

  /** Populate the year dropdown and the catalog status line. */
  async init(): Promise<void> {
    try {
      const datasets = await this.client.listDatasets();
      this.view.setYearOptions(datasets.map((d) => d.year));
      if (datasets.length === 0) {
        this.view.setCatalogStatus("Catalog is empty — ingest a year first.");
      } else {
        const first = datasets[0].year;
        const last = datasets[datasets.length - 1].year;
        this.view.setCatalogStatus(
          `${datasets.length} academic year${datasets.length === 1 ? "" : "s"} available (${first} – ${last})`,
        );
      }
    } catch {
      this.view.setCatalogStatus("Catalog unavailable — is the server running?");
    }
  }

  /**
   * Validate and, if clean, fetch comparison and trend. A submission that
   * starts while an earlier one is in flight supersedes it: the stale
   * response is dropped, whichever order the servers reply in.
   */
  async submit(form: FormValues): Promise<void> {
    const message = validateInputs(form);
    this.view.setValidationMessage(message);
    if (message !== null) {
      return;
    }

    const token = ++this.seq;
    const year1 = form.year1.trim();
    const year2 = form.year2.trim();
    const column = form.column.trim() || undefined;
    const [from, to] = orderYears(year1, year2);

    this.view.setErrorBanner(null);
    this.view.setSubmitting(true);
    try {
      const [cmp, trend] = await Promise.all([
        this.client.compare(year1, year2, column),
        this.client.trend(from, to, column),
      ]);
      if (token !== this.seq) return;
      this.view.renderResult(buildResultPanel(cmp, trend));
    } catch (err) {
      if (token !== this.seq) return;
      if (err instanceof ApiRequestError) {
        this.view.setErrorBanner(err.message);
      } else {
        this.view.setErrorBanner(
          "Could not reach the server; check the connection and try again.",
        );
      }
    } finally {
      if (token === this.seq) {
        this.view.setSubmitting(false);
      }
    }
  }
}
