import numpy as np
import pytest

from gwmirror.instanton import quintic_spec, quintic_table
from gwmirror.mirror import i_function, normalize
from gwmirror.schemas import GeometrySpec

SEED = 20030


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(SEED)


@pytest.fixture(scope="session")
def quintic() -> GeometrySpec:
    return quintic_spec(6)


@pytest.fixture(scope="session")
def quintic_normalization(quintic):
    """Normalized J_E of the quintic to order 6; shared because it is the slowest pipeline step."""
    return normalize(i_function(quintic), quintic)


@pytest.fixture(scope="session")
def quintic_pipeline():
    return quintic_table(6)
