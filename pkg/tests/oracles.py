"""Independent oracles the tests check the engine against.

Everything here deliberately avoids the library under test and the stdlib
csv module: sums are plain sequential accumulation, CSV splitting is a
character-level state machine. Keep these dumb and obviously correct.
"""

from __future__ import annotations

NULL_TOKENS = {"", "NULL", "null", "PrivacySuppressed"}


def naive_sum(values) -> float:
    """Plain left-to-right float accumulation."""
    total = 0.0
    for v in values:
        total += float(v)
    return total


def naive_sum_skipping_nulls(cells, tokens=NULL_TOKENS) -> tuple[float, int, int]:
    """(total, non_null_count, null_count) over raw string cells."""
    total = 0.0
    non_null = 0
    nulls = 0
    for cell in cells:
        if cell in tokens:
            nulls += 1
        else:
            total += float(cell)
            non_null += 1
    return total, non_null, nulls


def naive_weighted_mean(weights, values):
    """Sum(w*v)/Sum(w) over rows where both are not None; None if undefined."""
    sw = 0.0
    swv = 0.0
    qualifying = 0
    for w, v in zip(weights, values):
        if w is None or v is None:
            continue
        qualifying += 1
        sw += w
        swv += w * v
    if qualifying == 0 or sw == 0:
        return None
    return swv / sw


def split_csv_records(text: str, delimiter: str = ",") -> list[list[str]]:
    """Minimal RFC-4180 splitter: quoted fields, doubled quotes, embedded
    delimiters and newlines, \\r\\n or \\n record ends."""
    records: list[list[str]] = []
    record: list[str] = []
    fieldparts: list[str] = []
    field_started = False
    in_quotes = False
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if in_quotes:
            if ch == '"':
                if i + 1 < n and text[i + 1] == '"':
                    fieldparts.append('"')
                    i += 2
                    continue
                in_quotes = False
                i += 1
                continue
            fieldparts.append(ch)
            i += 1
            continue
        if ch == '"' and not fieldparts and not field_started:
            in_quotes = True
            field_started = True
            i += 1
            continue
        if ch == delimiter:
            record.append("".join(fieldparts))
            fieldparts = []
            field_started = False
            i += 1
            continue
        if ch in ("\n", "\r"):
            record.append("".join(fieldparts))
            fieldparts = []
            field_started = False
            records.append(record)
            record = []
            if ch == "\r" and i + 1 < n and text[i + 1] == "\n":
                i += 2
            else:
                i += 1
            continue
        fieldparts.append(ch)
        field_started = True
        i += 1
    if in_quotes:
        raise ValueError("unclosed quote")
    if fieldparts or field_started or record:
        record.append("".join(fieldparts))
        records.append(record)
    return records


def count_null_cells(rows, tokens=NULL_TOKENS) -> int:
    """Streaming null-cell counter over row-major string cells."""
    count = 0
    for row in rows:
        for cell in row:
            if cell in tokens:
                count += 1
    return count
