import pytest

from latdisc.corpus import (
    named_alphas,
    random_irrational_alphas,
    random_rational_alphas,
)


@pytest.fixture(scope="session")
def named():
    return named_alphas()


@pytest.fixture(scope="session")
def rationals():
    return random_rational_alphas()


@pytest.fixture(scope="session")
def irrationals():
    return random_irrational_alphas()


@pytest.fixture(scope="session")
def corpus(named, rationals, irrationals):
    return named + rationals + irrationals
