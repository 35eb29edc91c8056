"""Shared reference data for the test suites."""

import numpy as np
import pytest

from loccdisc.bell import BellSet

# Failing sets containing (0,0) and (0,1); the two remaining states are listed.
WITH_00_01_REST = [
    ((0, 2), (2, 0)), ((0, 2), (2, 2)), ((1, 0), (1, 2)), ((1, 0), (2, 1)), ((1, 0), (2, 2)),
    ((1, 1), (1, 3)), ((1, 1), (2, 0)), ((1, 1), (2, 3)), ((1, 2), (2, 1)), ((1, 2), (2, 2)),
    ((1, 3), (2, 0)), ((1, 3), (2, 3)), ((2, 0), (2, 2)), ((2, 0), (2, 3)), ((2, 0), (3, 1)),
    ((2, 0), (3, 3)), ((2, 1), (2, 3)), ((2, 1), (3, 0)), ((2, 1), (3, 2)), ((2, 2), (3, 0)),
    ((2, 2), (3, 2)), ((2, 3), (3, 1)), ((2, 3), (3, 3)), ((3, 0), (3, 2)), ((3, 1), (3, 3)),
]

# Failing sets containing (0,0) and (0,2).
WITH_00_02_REST = [
    ((1, 0), (2, 0)), ((1, 0), (2, 2)), ((1, 0), (3, 1)), ((1, 0), (3, 2)), ((1, 0), (3, 3)),
    ((1, 1), (2, 0)), ((1, 1), (2, 2)), ((1, 1), (3, 0)), ((1, 1), (3, 1)), ((1, 1), (3, 2)),
    ((2, 0), (3, 0)), ((2, 0), (3, 1)), ((2, 0), (3, 2)), ((2, 0), (3, 3)),
]

WITH_00_01 = [BellSet.of(4, [(0, 0), (0, 1), *rest]) for rest in WITH_00_01_REST]
WITH_00_02 = [BellSet.of(4, [(0, 0), (0, 2), *rest]) for rest in WITH_00_02_REST]
FAILING_SETS = WITH_00_01 + WITH_00_02

ENS2_PAIRS = [(0, 0), (1, 1), (3, 1), (3, 2)]


@pytest.fixture
def rng():
    """Seeded generator for reproducible random draws."""
    return np.random.default_rng(20240611)


@pytest.fixture
def ens2_set():
    return BellSet.of(4, ENS2_PAIRS)


@pytest.fixture
def ens2_states(ens2_set):
    return ens2_set.states()


@pytest.fixture
def set0_standard_set():
    """All m distinct, n repeated: {(1,0), (1,1), (0,2), (2,3)}."""
    return BellSet.of(4, [(1, 0), (1, 1), (0, 2), (2, 3)])


@pytest.fixture
def set0_fourier_set():
    """All n distinct, m repeated: {(0,2), (1,2), (2,0), (3,1)}."""
    return BellSet.of(4, [(0, 2), (1, 2), (2, 0), (3, 1)])
