import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from spnkit import SymMatrix, load_fixture


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture(scope="session")
def horn():
    return load_fixture("horn5")


@pytest.fixture(scope="session")
def perm_ordered5():
    return load_fixture("perm_ordered5")


@pytest.fixture(scope="session")
def horn_bordered6():
    return load_fixture("horn_bordered6")


@pytest.fixture(scope="session")
def ordered6():
    return load_fixture("ordered6")


@pytest.fixture(scope="session")
def cycle5():
    return load_fixture("cycle5")


@pytest.fixture(scope="session")
def identity3():
    return SymMatrix(np.eye(3))
