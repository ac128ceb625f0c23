import numpy as np
import pytest

from models.minkowski import MinkowskiModel, MinkParams
from models.plane import PlaneModel, PlaneParams
from models.sphere import SphereModel, SphereParams

SEED = 20240617


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture
def plane():
    return PlaneModel(PlaneParams(0.1))


@pytest.fixture
def minkowski():
    return MinkowskiModel(MinkParams(0.1, 1.0))


@pytest.fixture
def sphere():
    return SphereModel(SphereParams(0.5))
