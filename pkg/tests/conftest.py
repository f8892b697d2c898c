import random
from pathlib import Path

import pytest

from semlink.pipeline import build_snapshot
from semlink.store import Store

FIXTURES = Path(__file__).parent / "fixtures"
STORE_ROOT = FIXTURES / "store"

HAMSTER_DOC = "courses/vet/hamster-diseases"
HANDBOOK_DOC = "courses/vet/hay-fever-handbook"
UNRELATED_DOC = "courses/vet/unrelated"
BACKGROUND_CTX = "courses/vet/background-info"
EVERYTHING_CTX = "courses/vet/everything"


@pytest.fixture(scope="session")
def fixture_store() -> Store:
    return Store(STORE_ROOT)


@pytest.fixture(scope="session")
def snapshot(fixture_store):
    return build_snapshot(fixture_store)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260814)
