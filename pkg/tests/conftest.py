import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tangstar.fixtures import load_fixture  # noqa: E402
from tangstar.suites import corrected_e, memoized  # noqa: E402


@pytest.fixture(scope="session")
def g54():
    return load_fixture("g54")


@pytest.fixture(scope="session")
def g612():
    return load_fixture("g612")


@pytest.fixture(scope="session")
def g614():
    return load_fixture("g614")


@pytest.fixture(scope="session")
def L54(g54):
    return g54.algebra


@pytest.fixture(scope="session")
def e3(g54):
    """E_3 of the corrected ladder, cached across tests."""
    return memoized(corrected_e(g54, 3))
