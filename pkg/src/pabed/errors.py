"""Exception hierarchy shared by every layer of the stack.

Each error carries a stable machine-readable ``code``. The HTTP service maps
codes to status lines; the CLI prints them as ``error[CODE]: message`` and
exits nonzero. Raising anything outside this hierarchy surfaces as INTERNAL.
"""


class PabedError(Exception):
    """Base class for all domain errors."""

    code = "INTERNAL"


class MalformedYear(PabedError):
    """Academic-year label is not of the canonical ``YYYY_YY`` form."""

    code = "MALFORMED_YEAR"


class InvalidRange(MalformedYear):
    """Trend range starts after it ends."""


class UnknownYear(PabedError):
    """No table registered for the requested academic year."""

    code = "UNKNOWN_YEAR"


class EmptyRange(PabedError):
    """A trend range containing no registered year."""

    code = "UNKNOWN_YEAR"


class UnknownColumn(PabedError):
    code = "UNKNOWN_COLUMN"


class TypeMismatch(PabedError):
    """Aggregation requested over a non-numeric column."""

    code = "TYPE_MISMATCH"


class CsvSyntaxError(PabedError):
    """Structurally broken CSV: unclosed quote, bad quoting, or (in strict
    mode) inconsistent row length."""

    code = "CSV_SYNTAX"


class EmptyInput(CsvSyntaxError):
    """CSV source without a header row."""


class CoercionError(PabedError):
    """Strict-mode ingestion hit a cell that is neither a null token nor
    parsable as the column's type."""

    code = "COERCION_ERROR"


class FormatError(PabedError):
    """Snapshot file is corrupt: bad magic, unsupported version, truncation,
    trailing bytes, or checksum mismatch."""

    code = "FORMAT_ERROR"


class MissingParameter(PabedError):
    code = "MISSING_PARAMETER"


class Unauthorized(PabedError):
    code = "UNAUTHORIZED"


class PayloadTooLarge(PabedError):
    code = "PAYLOAD_TOO_LARGE"
