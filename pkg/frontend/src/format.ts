/**
 * Display formatting. The dashboard never computes aggregates itself, so
 * everything here is a fixed-precision rendering of a number the API sent.
 */

/** Totals and deltas are shown with exactly one decimal place. */
export function formatTotal(value: number): string {
  return value.toFixed(1);
}

/** Percent change; the API sends null when it is undefined. */
export function formatPctChange(value: number | null): string {
  if (value === null) {
    return "n/a";
  }
  return `${value.toFixed(1)}%`;
}

/** Signed delta, so increases read as "+123.0". */
export function formatDelta(value: number): string {
  const text = formatTotal(value);
  return value > 0 ? `+${text}` : text;
}
