import pytest

from twisted_link import Settings, alternating, cyclic, dihedral, klein_four, quaternion, symmetric


@pytest.fixture
def settings():
    return Settings({'truncation_level': 3, 'automorphism_sample': 8})


@pytest.fixture(scope="session")
def c5():
    return cyclic(5)


@pytest.fixture(scope="session")
def c6():
    return cyclic(6)


@pytest.fixture(scope="session")
def s3():
    return symmetric(3)


@pytest.fixture(scope="session")
def v4():
    return klein_four()


@pytest.fixture(scope="session")
def d4():
    return dihedral(4)


@pytest.fixture(scope="session")
def q8():
    return quaternion()


@pytest.fixture(scope="session")
def a4():
    return alternating(4)
