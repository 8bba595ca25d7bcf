import pytest


@pytest.fixture(scope="session")
def catalog3():
    from toruspack.ecg import identify

    return identify(3)


@pytest.fixture(scope="session")
def catalog4():
    from toruspack.ecg import identify

    return identify(4)
