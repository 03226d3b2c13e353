import pytest

from eelink import QosSpec, default_params


@pytest.fixture(scope="session")
def params():
    return default_params()


@pytest.fixture(scope="session")
def qos_1e4():
    return QosSpec(theta=1e-4)
