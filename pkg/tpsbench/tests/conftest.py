"""
Centralized Test Configuration.
"""

import random
from pathlib import Path

import pytest
from httpx import AsyncClient, ASGITransport

from tpsbench.app.domain.algebra.catalog import catalog
from tpsbench.app.main import app

ALGEBRA_DIR = Path(__file__).resolve().parents[2] / "algebras"


@pytest.fixture
def rng():
    """Reproducible sampler for random basis pairs."""
    return random.Random(1729)


@pytest.fixture
def witt():
    return catalog("witt")


@pytest.fixture
def w_ab_b2():
    return catalog("w_ab", {"a": 0, "b": 2})


@pytest.fixture
def w_abs_b_minus1():
    return catalog("w_abs", {"a": 0, "b": -1})


@pytest.fixture
def wn2():
    return catalog("wn_g", {"n": 2, "generators": [1]})


@pytest.fixture
def hwn1():
    return catalog("hwn_g", {"n": 1, "generators": [1]})


@pytest.fixture
def algebra_source():
    """Text of a shipped `.liealg` file by catalog name."""
    def read(name: str) -> str:
        return (ALGEBRA_DIR / f"{name}.liealg").read_text(encoding="utf-8")
    return read


@pytest.fixture
async def client():
    """Async client for testing."""
    async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as ac:
        yield ac
