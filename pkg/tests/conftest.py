import pytest

from kneser_vr.complex import build_complex, kneser_complex


@pytest.fixture(scope="session")
def kg31():
    return kneser_complex(3, 1)


@pytest.fixture(scope="session")
def cross10():
    return build_complex(3, 6, 4)


@pytest.fixture(scope="session")
def octahedron():
    return build_complex(2, 4, 2)
