import pytest
from mpmath import mp

from overrank.qseries import rank_table

# Library entry points set their own working precision internally; this
# ambient setting only governs test-side comparison arithmetic.
mp.prec = 320


@pytest.fixture(scope="session")
def table_mid():
    """Exact rank table to n_max=220 (seconds)."""
    return rank_table(220)


@pytest.fixture(scope="session")
def table_big():
    """Exact rank table to n_max=2500; built once, drives the acceptance runs."""
    return rank_table(2500)
