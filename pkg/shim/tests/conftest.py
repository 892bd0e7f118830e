from __future__ import annotations

import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from fizz_shim.app import create_app

# The wire contracts are owned by the consumer package; in this repository
# they live alongside the shim.
SHARED_SCHEMAS = Path(__file__).resolve().parents[2] / "src" / "fizz" / "schemas"


@pytest.fixture(scope="session")
def client() -> TestClient:
    return TestClient(create_app())


@pytest.fixture(scope="session")
def nli_schema() -> dict:
    return json.loads((SHARED_SCHEMAS / "nli_wire.schema.json").read_text("utf-8"))


@pytest.fixture(scope="session")
def coref_schema() -> dict:
    return json.loads((SHARED_SCHEMAS / "coref_wire.schema.json").read_text("utf-8"))
