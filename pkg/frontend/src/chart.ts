/**
 * Dependency-free SVG line chart.
 *
 * The renderer returns an SVG string, so it can be unit-tested in Node and
 * injected into the page with innerHTML. The two compared years are repeated
 * as text callouts pinned to the chart's top-right corner.
 */

import { formatTotal } from "./format.js";
import { startYear } from "./validate.js";

export interface ChartPoint {
  year: string;
  total: number;
}

export interface ChartModel {
  column: string;
  points: ChartPoint[];
  /** The two compared years, echoed as top-right annotations. */
  callouts: [ChartPoint, ChartPoint];
}

export const CHART_WIDTH = 640;
export const CHART_HEIGHT = 320;

const MARGIN = { top: 48, right: 20, bottom: 40, left: 64 };

/**
 * Assemble the model from API responses. Points must already be in
 * ascending year order (the trend endpoint guarantees it) and both compared
 * years must be among them; anything else is a programming error.
 */
export function buildChartModel(
  column: string,
  points: ChartPoint[],
  first: ChartPoint,
  second: ChartPoint,
): ChartModel {
  if (points.length === 0) {
    throw new Error("cannot chart an empty series");
  }
  for (let i = 1; i < points.length; i++) {
    if (startYear(points[i].year) <= startYear(points[i - 1].year)) {
      throw new Error("trend points must ascend by start year");
    }
  }
  for (const callout of [first, second]) {
    if (!points.some((p) => p.year === callout.year)) {
      throw new Error(`callout year ${callout.year} missing from series`);
    }
  }
  return { column, points, callouts: [first, second] };
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderLineChart(model: ChartModel): string {
  const innerW = CHART_WIDTH - MARGIN.left - MARGIN.right;
  const innerH = CHART_HEIGHT - MARGIN.top - MARGIN.bottom;
  const totals = model.points.map((p) => p.total);
  const lo = Math.min(...totals);
  const hi = Math.max(...totals);
  const n = model.points.length;

  const x = (i: number) =>
    MARGIN.left + (n === 1 ? innerW / 2 : (i / (n - 1)) * innerW);
  // a flat series sits mid-chart instead of dividing by zero
  const y = (v: number) =>
    hi === lo
      ? MARGIN.top + innerH / 2
      : MARGIN.top + ((hi - v) / (hi - lo)) * innerH;

  const px = (v: number) => v.toFixed(1);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${CHART_WIDTH} ${CHART_HEIGHT}" ` +
      `role="img" aria-label="${escapeXml(model.column)} trend">`,
  );

  // frame and y-axis extent labels
  const bottom = MARGIN.top + innerH;
  parts.push(
    `<line class="axis" x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${bottom}"/>`,
    `<line class="axis" x1="${MARGIN.left}" y1="${bottom}" x2="${MARGIN.left + innerW}" y2="${bottom}"/>`,
    `<text class="ylabel" x="${MARGIN.left - 8}" y="${y(hi)}" text-anchor="end" dominant-baseline="middle">${formatTotal(hi)}</text>`,
  );
  if (hi !== lo) {
    parts.push(
      `<text class="ylabel" x="${MARGIN.left - 8}" y="${y(lo)}" text-anchor="end" dominant-baseline="middle">${formatTotal(lo)}</text>`,
    );
  }

  const coords = model.points.map((p, i) => [x(i), y(p.total)] as const);
  if (n > 1) {
    const path = coords.map(([cx, cy]) => `${px(cx)},${px(cy)}`).join(" ");
    parts.push(`<polyline class="trend" fill="none" points="${path}"/>`);
  }
  model.points.forEach((p, i) => {
    parts.push(
      `<circle class="pt" data-year="${escapeXml(p.year)}" cx="${px(coords[i][0])}" cy="${px(coords[i][1])}" r="3.5"/>`,
    );
  });

  // x tick labels, thinned so long ranges stay readable
  const step = Math.max(1, Math.ceil(n / 8));
  model.points.forEach((p, i) => {
    if (i % step !== 0 && i !== n - 1) return;
    parts.push(
      `<text class="xlabel" x="${px(x(i))}" y="${bottom + 18}" text-anchor="middle">${escapeXml(p.year)}</text>`,
    );
  });

  // the two compared totals, top-right corner
  const cx = CHART_WIDTH - MARGIN.right;
  parts.push(`<g class="callouts" transform="translate(${cx},16)">`);
  model.callouts.forEach((c, i) => {
    parts.push(
      `<text class="callout" x="0" y="${i * 16}" text-anchor="end">` +
        `${escapeXml(c.year)}: ${formatTotal(c.total)}</text>`,
    );
  });
  parts.push("</g>");

  parts.push("</svg>");
  return parts.join("\n");
}
