import os

os.environ.setdefault("ENVIRONMENT", "test")

import numpy as np  # noqa: E402
import pytest  # noqa: E402

from src.models.quandle import Quandle  # noqa: E402
from src.services.chain_complex import ChainComplex  # noqa: E402
from src.services.quandles import build_xset, dihedral, load_quandle  # noqa: E402


@pytest.fixture
def r3() -> Quandle:
    return dihedral(3)


@pytest.fixture
def r4() -> Quandle:
    return dihedral(4)


@pytest.fixture
def s4() -> Quandle:
    return load_quandle("fixture:s4")


@pytest.fixture
def q2() -> Quandle:
    return load_quandle("fixture:q2")


@pytest.fixture
def make_complex():
    def factory(q: Quandle, theory: str = "R", xset: str = "full") -> ChainComplex:
        return ChainComplex(q, build_xset(q, xset), theory)

    return factory


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)
