import random

import pytest

from pabed.ingest import ingest_csv
from pabed.store import Catalog

from gen import scorecard_csv

#: The eight school years the trend chart in the original workflow spans.
EIGHT_YEARS = [f"{y}_{str(y + 1)[-2:]}" for y in range(1996, 2004)]


@pytest.fixture(scope="session")
def eight_year_csvs() -> dict[str, str]:
    """Label -> Scorecard-shaped CSV text for 1996_97 .. 2003_04."""
    return {
        label: scorecard_csv(seed=1996 + i, rows=350)
        for i, label in enumerate(EIGHT_YEARS)
    }


@pytest.fixture
def fixture_catalog(eight_year_csvs) -> Catalog:
    """In-memory catalog holding all eight synthetic years."""
    catalog = Catalog()
    for label, text in eight_year_csvs.items():
        table, _ = ingest_csv(text, label)
        catalog.register(table)
    return catalog


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0x9A8ED)


#: Filled by the acceptance tests; echoed after the run so the measured
#: margins are visible even with output capture on.
_ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
