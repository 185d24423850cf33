import numpy as np
import pytest

from cqho.spectrum import table1_report


@pytest.fixture(scope="session")
def table_rows():
    """One shared reference-table sweep (25 cells, both potentials)."""
    return table1_report(grid_points=2000)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260810)
