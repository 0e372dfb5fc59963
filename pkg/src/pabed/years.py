"""Academic-year identifiers.

Tables are keyed by the school year they cover, written ``YYYY_YY``: four
digits for the starting calendar year, an underscore, and the last two digits
of the following year (``1996_97``, ``1999_00``). The suffix is redundant but
mandatory, which catches most transposition typos at the door.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import MalformedYear

MIN_START_YEAR = 1900
MAX_START_YEAR = 2099

_LABEL_RE = re.compile(r"\A(\d{4})_(\d{2})\Z")


@dataclass(frozen=True, order=True)
class AcademicYearId:
    """A validated academic year; ordering follows the starting year."""

    start_year: int
    label: str = field(compare=False)

    def __post_init__(self) -> None:
        if not MIN_START_YEAR <= self.start_year <= MAX_START_YEAR:
            raise MalformedYear(
                f"start year {self.start_year} outside supported range "
                f"{MIN_START_YEAR}-{MAX_START_YEAR}"
            )
        if self.label != format_label(self.start_year):
            raise MalformedYear(
                f"label {self.label!r} does not match start year {self.start_year}"
            )

    @classmethod
    def from_start(cls, start_year: int) -> "AcademicYearId":
        return cls(start_year, format_label(start_year))

    def __str__(self) -> str:
        return self.label


def format_label(start_year: int) -> str:
    return f"{start_year:04d}_{(start_year + 1) % 100:02d}"


def parse_academic_year(label: str) -> AcademicYearId:
    """Parse a ``YYYY_YY`` label, rejecting anything non-canonical.

    The two-digit suffix must equal ``(start + 1) mod 100``, so century
    rollovers look like ``1999_00``.
    """
    m = _LABEL_RE.match(label)
    if m is None:
        raise MalformedYear(
            f"academic year {label!r} must have the form YYYY_YY, e.g. 1996_97"
        )
    start = int(m.group(1))
    if not MIN_START_YEAR <= start <= MAX_START_YEAR:
        raise MalformedYear(
            f"academic year {label!r} outside supported range "
            f"{MIN_START_YEAR}-{MAX_START_YEAR}"
        )
    if int(m.group(2)) != (start + 1) % 100:
        raise MalformedYear(
            f"academic year {label!r} has suffix {m.group(2)}, "
            f"expected {(start + 1) % 100:02d}"
        )
    return AcademicYearId(start, label)


def as_year(year: "AcademicYearId | str") -> AcademicYearId:
    """Accept either an already-parsed id or a raw label."""
    if isinstance(year, AcademicYearId):
        return year
    return parse_academic_year(year)
