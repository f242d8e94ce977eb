import pytest

import boundary_lab as bl


@pytest.fixture(scope="session")
def zoo_x8():
    return bl.build_X(8)


@pytest.fixture(scope="session")
def zoo_x16():
    return bl.build_X(16)


@pytest.fixture(scope="session")
def zoo_y16():
    return bl.build_Y(16)


@pytest.fixture(scope="session")
def zoo_xcat8():
    return bl.build_Xcat0(8)


@pytest.fixture(scope="session")
def zoo_xcat12():
    return bl.build_Xcat0(12)


@pytest.fixture(scope="session")
def zoo_ycat14():
    return bl.build_Ycat0(14)
