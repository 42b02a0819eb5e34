import pytest

from aralg.catalog import test_algebras as _catalog


@pytest.fixture(scope="session")
def algebras():
    return _catalog()


@pytest.fixture(scope="session")
def T1(algebras):
    return algebras["T1"]


@pytest.fixture(scope="session")
def T2(algebras):
    return algebras["T2"]


@pytest.fixture(scope="session")
def T3(algebras):
    return algebras["T3"]


@pytest.fixture(scope="session")
def T4(algebras):
    return algebras["T4"]
