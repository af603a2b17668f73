import os

import pytest

from hpcause.zoo import arsonists, context

DATA = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture
def arson():
    return arsonists()


@pytest.fixture
def u11():
    return context(1, 1)


@pytest.fixture
def u10():
    return context(1, 0)


@pytest.fixture
def u01():
    return context(0, 1)


@pytest.fixture
def u00():
    return context(0, 0)


@pytest.fixture
def data_dir():
    return DATA
