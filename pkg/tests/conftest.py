import os

import pytest

from snec.kronecker import character_table
from snec.partitions import enumerate_partitions

FIXTURE_CURVES = os.path.join(os.path.dirname(__file__), "data", "curves_small.csv")

# Optional externally supplied labeled curve file (LMFDB export in our CSV
# format); the heavier reproduction tests skip without it.
EXTERNAL_CURVES = os.environ.get("SNEC_CURVES_FILE")


@pytest.fixture(scope="session")
def table6():
    return enumerate_partitions(6)


@pytest.fixture(scope="session")
def ctab3():
    return character_table(3)


@pytest.fixture(scope="session")
def ctab6():
    return character_table(6)


@pytest.fixture(scope="session")
def ctab8():
    return character_table(8)


@pytest.fixture(scope="session")
def fixture_curves_path():
    return FIXTURE_CURVES


def require_external_curves():
    if not EXTERNAL_CURVES or not os.path.exists(EXTERNAL_CURVES):
        pytest.skip("set SNEC_CURVES_FILE to a labeled curve CSV to run this reproduction")
    return EXTERNAL_CURVES
