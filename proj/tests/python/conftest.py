import os
import pathlib

import pytest


@pytest.fixture
def fixtures():
    return pathlib.Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def cli():
    path = os.environ.get("STRATA_CLI")
    if not path:
        pytest.skip("STRATA_CLI is not set")
    return path
