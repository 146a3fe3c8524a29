import os

import pytest

from reservelab.data import builtin_instance
from reservelab.model import Individual, Instance, validate_instance
from reservelab.policies import PolicySpec

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def _build(rows, capacity, reserved=None, **kwargs):
    individuals = [Individual.create(iid, cats, score) for iid, cats, score in rows]
    return validate_instance(Instance.create(individuals, capacity, reserved or {}, **kwargs))


@pytest.fixture
def build():
    """
    Factory for validated instances from (id, categories, score) rows.
    """
    return _build


@pytest.fixture
def example1():
    return builtin_instance("example1")


@pytest.fixture
def example2():
    return builtin_instance("example2")


@pytest.fixture
def example2_arrival():
    return builtin_instance("example2_arrival")


@pytest.fixture
def empty():
    return builtin_instance("empty")


@pytest.fixture
def elevated10():
    return PolicySpec.elevated(10)


@pytest.fixture
def gap10():
    return PolicySpec.gap(PolicySpec.elevated(10), 10)


@pytest.fixture
def repo_root():
    return REPO_ROOT
