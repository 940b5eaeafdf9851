import pytest

from liesub.classify import RunConfig, Session
from liesub.field import NumberField


@pytest.fixture(scope="session")
def session():
    return Session(config=RunConfig(seed=0))


@pytest.fixture(scope="session")
def a2_db(session):
    return session.classify("A2")


@pytest.fixture(scope="session")
def b2_db(session):
    return session.classify("B2")


@pytest.fixture(scope="session")
def g2_db(session):
    return session.classify("G2")


@pytest.fixture(scope="session")
def a3_db(session):
    return session.classify("A3")


@pytest.fixture(scope="session")
def a1a1_db(session):
    return session.classify("A1+A1")


@pytest.fixture(scope="session")
def ext_session():
    """Session over Q(sqrt(-3)), which is enough for D4."""
    return Session(NumberField([3, 0, 1]), RunConfig(seed=0))


@pytest.fixture(scope="session")
def d4_db(ext_session):
    return ext_session.classify("D4")
