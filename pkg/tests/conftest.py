from pathlib import Path

import pytest

from fibnim.engine import build_table

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def table20():
    return build_table(20)


@pytest.fixture(scope="session")
def table500():
    return build_table(500)


@pytest.fixture(scope="session")
def table2000():
    return build_table(2000)


@pytest.fixture(scope="session")
def golden_csv() -> str:
    return (DATA_DIR / "table1.csv").read_text()


@pytest.fixture(scope="session")
def golden_rows(golden_csv) -> dict[int, list[int]]:
    """Golden table rows keyed by n, parsed from the checked-in fixture."""
    rows: dict[int, list[int]] = {}
    for line in golden_csv.strip().splitlines()[1:]:
        n, r, g = (int(x) for x in line.split(","))
        rows.setdefault(n, []).append(g)
        assert len(rows[n]) == r + 1
    return rows
