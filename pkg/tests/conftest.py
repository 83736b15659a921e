import pytest

from mamlab.fixtures import fixture, fixture_names
from mamlab.io import load_data


@pytest.fixture
def load():
    """Load a named built-in example as InputData."""

    def _load(name):
        return load_data(fixture(name))

    return _load


def all_fixture_names():
    return fixture_names()
