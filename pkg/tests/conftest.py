from __future__ import annotations

import csv
from pathlib import Path

import pytest

from minrep.engine.extremal import max_table
from minrep.engine.table import ComplexityTable, EngineConfig, build_table

DATA_DIR = Path(__file__).parent / "data"

QUIET = EngineConfig(progress=False)


def read_csv(name: str) -> list[dict[str, str]]:
    with (DATA_DIR / name).open(encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture(scope="session")
def ugly_rows() -> list[dict[str, str]]:
    """Ugly numbers under 1S* for 8 <= k <= 63."""
    return read_csv("ugly_1s_mul.csv")


@pytest.fixture(scope="session")
def maxrep_rows() -> list[dict[str, str]]:
    """Maximal values under 1S* for 1 <= k <= 54."""
    return read_csv("maxrep_1s_mul.csv")


@pytest.fixture(scope="session")
def mul_table() -> ComplexityTable:
    return build_table("1S*", 16_000, QUIET)


@pytest.fixture(scope="session")
def add_mul_table() -> ComplexityTable:
    return build_table("1S+*", 16_000, QUIET)


@pytest.fixture(scope="session")
def succ_table() -> ComplexityTable:
    return build_table("1S", 1000, QUIET)


@pytest.fixture(scope="session")
def succ_add_table() -> ComplexityTable:
    return build_table("1S+", 1000, QUIET)


@pytest.fixture(scope="session")
def pow_table() -> ComplexityTable:
    return build_table("1S^", 5000, QUIET)


@pytest.fixture(scope="session")
def mul_records():
    return max_table("1S*", 100)
