import pytest

from klab import Group


@pytest.fixture
def small_groups():
    """Groups of order at most 6, plus the trivial group."""
    return [
        Group.trivial(),
        Group.parse("C2"),
        Group.parse("C3"),
        Group.parse("C4"),
        Group.parse("C2xC2"),
        Group.parse("C5"),
        Group.parse("C6"),
    ]
