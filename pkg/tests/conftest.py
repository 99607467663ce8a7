import numpy as np
import pytest

from sskit.liealg import builtin_algebra

SEED = 20260823


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture(params=["abelian-2", "so3", "aff1-double"])
def algebra(request):
    return builtin_algebra(request.param)


@pytest.fixture
def so3():
    return builtin_algebra("so3")


@pytest.fixture
def abelian2():
    return builtin_algebra("abelian-2")
