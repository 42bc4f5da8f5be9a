import pytest

from permcodes import builtins as B


@pytest.fixture(scope="session")
def s6():
    return B.get("s6")


@pytest.fixture(scope="session")
def a6():
    return B.get("a6")


@pytest.fixture(scope="session")
def m12():
    return B.get("m12")


@pytest.fixture(scope="session")
def asl32():
    return B.get("asl32")


@pytest.fixture(scope="session")
def psl32():
    return B.get("psl32")


@pytest.fixture(scope="session")
def s6_12():
    return B.get("s6-12")


@pytest.fixture(scope="session")
def asl24():
    return B.get("asl24")
