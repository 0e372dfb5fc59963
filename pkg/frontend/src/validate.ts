/** The prompt shown whenever a required field is left empty. */
export const REQUIRED_MESSAGE = "*Please enter all the values";

/** Shape complaint for year inputs; names the expected format. */
export const YEAR_SHAPE_MESSAGE =
  "Academic years must have the form YYYY_YY, e.g. 1996_97";

const YEAR_SHAPE = /^\d{4}_\d{2}$/;

export interface FormValues {
  year1: string;
  year2: string;
  column: string;
}

/**
 * Returns null when the form may be submitted, otherwise the message to
 * show. Both year fields are required; the column falls back to a default
 * server-side so it may stay empty.
 */
export function validateInputs(form: FormValues): string | null {
  if (form.year1.trim() === "" || form.year2.trim() === "") {
    return REQUIRED_MESSAGE;
  }
  if (!YEAR_SHAPE.test(form.year1.trim()) || !YEAR_SHAPE.test(form.year2.trim())) {
    return YEAR_SHAPE_MESSAGE;
  }
  return null;
}

/** Start year of a YYYY_YY label; used only for ordering, never arithmetic. */
export function startYear(label: string): number {
  return parseInt(label.slice(0, 4), 10);
}

/** The two inputs ordered ascending, for the trend range. */
export function orderYears(a: string, b: string): [string, string] {
  return startYear(a) <= startYear(b) ? [a, b] : [b, a];
}
