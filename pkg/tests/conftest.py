import pytest

from src.services.plmap import identity, normalize


@pytest.fixture
def F1():
    return normalize([(0, 0), ("1/4", "1/2"), (1, 1)])


@pytest.fixture
def F3():
    return normalize([(0, 0), ("1/4", "1/2"), ("3/8", "5/8"), (1, 1)])


@pytest.fixture
def F4():
    return normalize([(0, 0), ("1/4", "1/2"), ("1/2", "5/8"), (1, 1)])


@pytest.fixture
def G3():
    return normalize([(0, 0), ("1/4", "1/2"), ("1/3", "3/5"), (1, 1)])


@pytest.fixture
def G4():
    return normalize([(0, 0), ("1/5", "2/5"), (1, 1)])


@pytest.fixture
def H4():
    return normalize([(0, 0), ("1/2", "2/5"), (1, 1)])


@pytest.fixture
def ident():
    return identity()
