import pytest

from wmds.cartan import CartanData
from wmds.presets import preset

A2 = [[2, -1], [-1, 2]]
B2 = [[2, -1], [-2, 2]]
AFFINE = [[2, -2], [-2, 2]]
HYP = [[2, -3], [-3, 2]]


@pytest.fixture
def a2():
    return CartanData.from_matrix(A2, 1)


@pytest.fixture
def hyperbolic():
    return preset("hyperbolic-n2")


@pytest.fixture
def rank_one():
    return preset("rank1-n2")
