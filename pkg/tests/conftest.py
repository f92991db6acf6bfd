import pytest

from ensembles.models import CouplingLaw, EnsembleSpec
from randomness.rng import RngStream


@pytest.fixture
def rng():
    return RngStream(12345)


@pytest.fixture
def gaussian_spec():
    return EnsembleSpec(kind="gaussian", beta=2.0, n=4)


@pytest.fixture
def definite_spec():
    return EnsembleSpec(kind="laguerre", beta=1.0, m=5, n=3)


@pytest.fixture
def semidefinite_spec():
    return EnsembleSpec(kind="laguerre", beta=2.0, m=2, n=5)


@pytest.fixture
def gamma_law():
    return CouplingLaw(kind="gamma_type", sigma=1.0)
