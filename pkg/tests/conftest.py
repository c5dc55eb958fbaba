from importlib import resources

import pytest
from hypothesis import settings

from frobcob import AbelianGroup, group_algebra

settings.register_profile("suite", max_examples=50, deadline=None)
settings.load_profile("suite")

Z2 = AbelianGroup(0, (2,))
Z3 = AbelianGroup(0, (3,))
Z4 = AbelianGroup(0, (4,))
Z22 = AbelianGroup(0, (2, 2))


def fixture_text(name: str) -> str:
    return resources.files("frobcob").joinpath("fixtures", name).read_text(encoding="utf-8")


def self_acting(group: AbelianGroup):
    """Group algebra of a finite group acting on itself by translation."""
    return group_algebra(group, acting_group=group, embed=group.generators())


@pytest.fixture
def c2():
    return self_acting(Z2)


@pytest.fixture
def c4():
    return self_acting(Z4)


@pytest.fixture
def c4a2():
    return group_algebra(Z4, acting_group=Z2, embed=(Z4.element(2),))


@pytest.fixture
def c3_plain():
    return group_algebra(Z3)
