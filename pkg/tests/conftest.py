from pathlib import Path

import pytest

from avon.model_file import load_model

CORPORA = Path(__file__).parent.parent / "corpora"


@pytest.fixture(autouse=True)
def setup_and_teardown(monkeypatch):
    monkeypatch.delenv("AVON_SEED", raising=False)
    monkeypatch.delenv("AVON_MAX_STATES", raising=False)
    yield


@pytest.fixture
def corpora() -> Path:
    return CORPORA


@pytest.fixture
def sets_model():
    "A={#1,#2}, B={#2,#3}, a=#3, b=#1, U={#1,#2,#3}"
    return load_model(CORPORA / "sets.lm")


@pytest.fixture
def nat6():
    return load_model(CORPORA / "nat6.lm")
