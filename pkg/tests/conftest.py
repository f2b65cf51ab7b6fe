import pytest

from genspecs import EXAMPLE_SPEC


@pytest.fixture
def example_spec():
    return EXAMPLE_SPEC
