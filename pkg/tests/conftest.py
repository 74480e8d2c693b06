import pytest

from relcell.annular import build_annular
from relcell.field import QQ
from relcell.usl2 import build_usl2
from relcell.zigzag import QuiverSpec, build_zigzag


@pytest.fixture(scope="session")
def k1():
    return build_annular(1, QQ)


@pytest.fixture(scope="session")
def k2():
    return build_annular(2, QQ)


@pytest.fixture(scope="session")
def u3():
    return build_usl2(3)


@pytest.fixture(scope="session")
def u5():
    return build_usl2(5)


@pytest.fixture(scope="session")
def zigzag_a3():
    return build_zigzag(QuiverSpec("A", 3), QQ)


@pytest.fixture(scope="session")
def zigzag_cycs3():
    return build_zigzag(QuiverSpec("cycS", 3), QQ)


@pytest.fixture(scope="session")
def zigzag_cycl3():
    return build_zigzag(QuiverSpec("cycL", 3), QQ)
