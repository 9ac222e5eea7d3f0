import os
import sys
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import numpy as np
import pytest

from catalog import CATALOG, catalog_get
from code_core import CodeSystem


@pytest.fixture
def lindstrom() -> CodeSystem:
    return catalog_get("lindstrom").system


@pytest.fixture
def lindstrom_normalized() -> CodeSystem:
    # mask 3 complements both coordinates; C1 becomes {2, 1, 0}
    return CodeSystem(2, ((2, 1, 0), (3, 0)), name="lindstrom-normalized")


@pytest.fixture
def published():
    """Catalog entries that carry a published (n, g) record."""
    return [entry for entry in CATALOG.values() if entry.expected is not None]


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)
