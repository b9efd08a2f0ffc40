import pytest

from sympref.cyclo import Cyclotomic
from sympref.sympgroup import SympMatrix, catalog


@pytest.fixture(scope="session")
def z2():
    return catalog("Z2_sp2")


@pytest.fixture(scope="session")
def z4():
    return catalog("Z4_sp2")


@pytest.fixture(scope="session")
def z6():
    return catalog("Z6_sp2")


@pytest.fixture(scope="session")
def pm1_sp4():
    return catalog("pm1_sp4")


def minus_identity(n):
    one = Cyclotomic.one()
    zero = Cyclotomic.zero()
    return SympMatrix(n, tuple(tuple(-one if i == j else zero for j in range(2 * n))
                               for i in range(2 * n)))


def minus_id_index(group):
    return group.index_of(minus_identity(group.n))
